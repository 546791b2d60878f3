#include "mechopt/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mechopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluator {
  const ObjectiveFn& f;
  long count{0};
  double best{kInf};
  std::vector<TracePoint>* trace;

  double operator()(std::span<const double> x) {
    double value = f(x);
    if (std::isnan(value)) {
      value = kInf;
    }
    ++count;
    best = std::min(best, value);
    if (trace != nullptr) {
      trace->push_back(TracePoint{count, best});
    }
    return value;
  }
};

struct Simplex {
  std::vector<std::vector<double>> x; // n+1 vertices
  std::vector<double> f;

  void sort() {
    const std::size_t m = f.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [this](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<std::vector<double>> xs(m);
    std::vector<double> fs(m);
    for (std::size_t i = 0; i < m; ++i) {
      xs[i] = std::move(x[idx[i]]);
      fs[i] = f[idx[i]];
    }
    x = std::move(xs);
    f = std::move(fs);
  }

  [[nodiscard]] double spread() const { return f.back() - f.front(); }

  [[nodiscard]] double diameter() const {
    double d = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x[i].size(); ++j) {
        d = std::max(d, std::abs(x[i][j] - x[0][j]));
      }
    }
    return d;
  }
};

} // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::FTol: return "ftol";
    case Termination::XTol: return "xtol";
    case Termination::MaxEvals: return "max_evals";
  }
  return "unknown";
}

void validate_optimizer_config(const OptimizerConfig& cfg) {
  if (!(cfg.reflection > 0.0) || !(cfg.expansion > 0.0) || !(cfg.contraction > 0.0) ||
      !(cfg.shrink > 0.0)) {
    throw DomainError("Nelder-Mead coefficients must be positive");
  }
  if (!(cfg.expansion > cfg.reflection)) {
    throw DomainError("expansion coefficient must exceed reflection coefficient");
  }
  if (!(cfg.contraction < 1.0) || !(cfg.shrink < 1.0)) {
    throw DomainError("contraction and shrink coefficients must be below 1");
  }
  if (!(cfg.initial_simplex_scale > 0.0)) {
    throw DomainError("initial_simplex_scale must be positive");
  }
  if (!(cfg.f_tol > 0.0) || !(cfg.x_tol > 0.0)) {
    throw DomainError("termination tolerances must be positive");
  }
  if (cfg.max_evals < 1) {
    throw DomainError("max_evals must be at least 1");
  }
  if (cfg.restarts < 0) {
    throw DomainError("restarts must be non-negative");
  }
}

namespace {

OptimizationResult run_simplex(Evaluator& ev, std::span<const double> x0,
                               const OptimizerConfig& cfg, std::span<const double> steps,
                               long eval_budget) {
  const std::size_t n = x0.size();
  if (n == 0) {
    throw DomainError("Nelder-Mead requires at least one variable");
  }
  if (!steps.empty() && steps.size() != n) {
    throw DomainError("initial simplex step vector dimension mismatch");
  }

  Simplex s;
  s.x.reserve(n + 1);
  s.x.emplace_back(x0.begin(), x0.end());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(x0.begin(), x0.end());
    v[j] += steps.empty() ? cfg.initial_simplex_scale : steps[j];
    s.x.push_back(std::move(v));
  }
  s.f.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    s.f[i] = ev(s.x[i]);
  }
  if (!std::isfinite(s.f[0])) {
    throw DomainError("objective is not finite at the start point");
  }

  Termination term = Termination::MaxEvals;
  std::vector<double> centroid(n), cand(n);
  while (true) {
    s.sort();
    const double fb = s.f.front(), fw = s.f.back();
    const double spread_limit = cfg.f_tol * (std::abs(fb) + std::abs(fw));
    if (std::isfinite(fw) && s.spread() <= spread_limit) {
      term = Termination::FTol;
      break;
    }
    if (s.diameter() <= cfg.x_tol) {
      term = Termination::XTol;
      break;
    }
    if (ev.count >= eval_budget) {
      term = Termination::MaxEvals;
      break;
    }

    // centroid of the n best vertices
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += s.x[i][j];
      }
      centroid[j] = acc / static_cast<double>(n);
    }
    auto blend = [&](double coeff, const std::vector<double>& away) {
      for (std::size_t j = 0; j < n; ++j) {
        cand[j] = centroid[j] + coeff * (centroid[j] - away[j]);
      }
    };

    blend(cfg.reflection, s.x.back());
    std::vector<double> xr = cand;
    const double fr = ev(xr);
    if (fr < s.f[0]) {
      // try to expand past the reflected point
      for (std::size_t j = 0; j < n; ++j) {
        cand[j] = centroid[j] + cfg.expansion * (xr[j] - centroid[j]);
      }
      const double fe = ev(cand);
      if (fe < fr) {
        s.x.back() = cand;
        s.f.back() = fe;
      } else {
        s.x.back() = std::move(xr);
        s.f.back() = fr;
      }
    } else if (fr < s.f[n - 1]) {
      s.x.back() = std::move(xr);
      s.f.back() = fr;
    } else if (fr < s.f[n]) {
      // outside contraction
      for (std::size_t j = 0; j < n; ++j) {
        cand[j] = centroid[j] + cfg.contraction * (xr[j] - centroid[j]);
      }
      const double fc = ev(cand);
      if (fc <= fr) {
        s.x.back() = cand;
        s.f.back() = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            s.x[i][j] = s.x[0][j] + cfg.shrink * (s.x[i][j] - s.x[0][j]);
          }
          s.f[i] = ev(s.x[i]);
        }
      }
    } else {
      // inside contraction
      blend(-cfg.contraction, s.x.back());
      const double fc = ev(cand);
      if (fc < s.f[n]) {
        s.x.back() = cand;
        s.f.back() = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            s.x[i][j] = s.x[0][j] + cfg.shrink * (s.x[i][j] - s.x[0][j]);
          }
          s.f[i] = ev(s.x[i]);
        }
      }
    }
  }

  s.sort();
  OptimizationResult out;
  out.best_x = s.x.front();
  out.best_f = s.f.front();
  out.termination = term;
  return out;
}

} // namespace

OptimizationResult nelder_mead(const ObjectiveFn& f, std::span<const double> x0,
                               const OptimizerConfig& cfg, std::span<const double> steps) {
  validate_optimizer_config(cfg);
  OptimizationResult result;
  Evaluator ev{f, 0, kInf, &result.trace};
  OptimizationResult run = run_simplex(ev, x0, cfg, steps, cfg.max_evals);
  result.best_x = std::move(run.best_x);
  result.best_f = run.best_f;
  result.termination = run.termination;
  result.evals = ev.count;
  return result;
}

OptimizationResult nelder_mead_restarted(const ObjectiveFn& f, std::span<const double> x0,
                                         const OptimizerConfig& cfg,
                                         std::span<const double> steps) {
  validate_optimizer_config(cfg);
  const std::size_t n = x0.size();
  std::vector<double> scaled_steps(steps.begin(), steps.end());
  if (scaled_steps.empty()) {
    scaled_steps.assign(n, cfg.initial_simplex_scale);
  }

  OptimizationResult result;
  Evaluator ev{f, 0, kInf, &result.trace};
  std::vector<double> start(x0.begin(), x0.end());
  double best_f = kInf;
  std::vector<double> best_x = start;
  Termination term = Termination::MaxEvals;

  for (int run = 0; run <= cfg.restarts; ++run) {
    if (run > 0 && ev.count >= cfg.max_evals) {
      term = Termination::MaxEvals;
      break;
    }
    OptimizationResult r = run_simplex(ev, start, cfg, scaled_steps, cfg.max_evals);
    if (r.best_f < best_f) {
      best_f = r.best_f;
      best_x = r.best_x;
    }
    term = r.termination;
    start = best_x;
    for (double& s : scaled_steps) {
      s *= 0.1; // restarts polish: re-seed the simplex tighter each time
    }
  }

  result.best_x = std::move(best_x);
  result.best_f = best_f;
  result.evals = ev.count;
  result.termination = ev.count >= cfg.max_evals ? Termination::MaxEvals : term;
  return result;
}

} // namespace mechopt
