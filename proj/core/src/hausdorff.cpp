#include "fracdim/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <utility>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

// Cells of equal height within one column carry equal mass at the optimum
// (the entropy term is strictly concave in the within-group split), so the
// search runs over groups with a multiplicity correction.
struct Group {
  int col;
  double logd;
  double logm;
};

struct Parts {
  double A = 0.0;  // sum p ln(q m / p)
  double B = 0.0;  // sum p ln(1/d)
  double C = 0.0;  // sum q ln q
  double D = 0.0;  // sum q ln c
  double value = 0.0;
  std::vector<double> q;
};

struct Objective {
  std::vector<Group> groups;
  std::vector<double> logc;               // per occupied column
  std::vector<std::size_t> cellToGroup;   // affine_maps order

  Parts parts(const std::vector<double>& p) const {
    Parts out;
    out.q.assign(logc.size(), 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) out.q[groups[g].col] += p[g];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      double pg = p[g];
      if (pg <= 0.0) continue;
      const Group& gr = groups[g];
      out.A += pg * (std::log(out.q[gr.col]) + gr.logm - std::log(pg));
      out.B -= pg * gr.logd;
    }
    for (std::size_t i = 0; i < out.q.size(); ++i) {
      if (out.q[i] <= 0.0) continue;
      out.C += out.q[i] * std::log(out.q[i]);
      out.D += out.q[i] * logc[i];
    }
    out.value = out.A / out.B + (out.C == 0.0 ? 0.0 : out.C / out.D);
    return out;
  }

  void gradient(const std::vector<double>& p, const Parts& pt, std::vector<double>& grad) const {
    grad.assign(groups.size(), 0.0);
    double B2 = pt.B * pt.B;
    double D2 = pt.D * pt.D;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const Group& gr = groups[g];
      double logq = std::log(pt.q[gr.col]);
      double gA = logq + gr.logm - std::log(p[g]);
      double gB = -gr.logd;
      double gC = logq + 1.0;
      double gD = logc[gr.col];
      grad[g] = (gA * pt.B - pt.A * gB) / B2 + (gC * pt.D - pt.C * gD) / D2;
    }
  }
};

Objective build_objective(const LGCarpet& carpet) {
  Objective obj;
  for (const LGColumn& col : carpet.columns) {
    if (col.cells.empty()) continue;
    int colIdx = static_cast<int>(obj.logc.size());
    obj.logc.push_back(std::log(col.width.val));
    std::map<double, int> counts;
    for (const LGCell& cell : col.cells) counts[cell.height.val]++;
    std::map<double, std::size_t> groupOf;
    for (const auto& [d, m] : counts) {
      groupOf[d] = obj.groups.size();
      obj.groups.push_back({colIdx, std::log(d), std::log(static_cast<double>(m))});
    }
    for (const LGCell& cell : col.cells) obj.cellToGroup.push_back(groupOf[cell.height.val]);
  }
  return obj;
}

std::vector<double> softmax(const std::vector<double>& x) {
  double mx = *std::max_element(x.begin(), x.end());
  std::vector<double> p(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = std::exp(x[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

struct RunResult {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> p;
  bool converged = false;
};

RunResult ascend(const Objective& obj, std::vector<double> x, int maxIter, double tol) {
  RunResult run;
  run.p = softmax(x);
  Parts pt = obj.parts(run.p);
  run.value = pt.value;
  std::vector<double> grad;
  obj.gradient(run.p, pt, grad);
  double step = 1.0;
  for (int iter = 0; iter < maxIter; ++iter) {
    double inner = 0.0;
    for (std::size_t g = 0; g < run.p.size(); ++g) inner += run.p[g] * grad[g];
    std::vector<double> gx(run.p.size());
    double gnorm = 0.0;
    for (std::size_t g = 0; g < run.p.size(); ++g) {
      gx[g] = run.p[g] * (grad[g] - inner);
      gnorm = std::max(gnorm, std::fabs(gx[g]));
    }
    if (gnorm < 1e-14) {
      run.converged = true;
      break;
    }
    bool improved = false;
    while (step >= 1e-18) {
      std::vector<double> xn(x.size());
      for (std::size_t g = 0; g < x.size(); ++g) xn[g] = x[g] + step * gx[g];
      std::vector<double> pn = softmax(xn);
      Parts ptn = obj.parts(pn);
      if (ptn.value > run.value) {
        double gain = ptn.value - run.value;
        x = std::move(xn);
        run.p = std::move(pn);
        run.value = ptn.value;
        obj.gradient(run.p, ptn, grad);
        step = std::min(step * 1.3, 1e6);
        improved = true;
        if (gain < tol) run.converged = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      // No uphill step along the gradient at any scale: at the optimum.
      run.converged = true;
      break;
    }
    if (run.converged) break;
  }
  return run;
}

// Self-consistency iteration: at an interior optimum the mass satisfies
// p ~ m q^(1+B/D) d^(A/B) c^(-CB/D^2), which converges fast near the
// maximizer. Only improving steps are accepted.
void polish(const Objective& obj, std::vector<double>& p, double& value) {
  for (int iter = 0; iter < 300; ++iter) {
    Parts pt = obj.parts(p);
    double a = 1.0 / pt.B;
    double b = pt.A / (pt.B * pt.B);
    double e = 1.0 / pt.D;
    double f = pt.C / (pt.D * pt.D);
    std::vector<double> lp(p.size());
    for (std::size_t g = 0; g < p.size(); ++g) {
      const Group& gr = obj.groups[g];
      lp[g] = gr.logm + (1.0 + e / a) * std::log(pt.q[gr.col]) + (b / a) * gr.logd -
              (f / a) * obj.logc[gr.col];
    }
    std::vector<double> pn = softmax(lp);
    double vn = obj.parts(pn).value;
    int halvings = 0;
    while (vn <= value && halvings < 30) {
      for (std::size_t g = 0; g < pn.size(); ++g) pn[g] = 0.5 * (pn[g] + p[g]);
      vn = obj.parts(pn).value;
      ++halvings;
    }
    if (vn <= value) break;
    double gain = vn - value;
    p = std::move(pn);
    value = vn;
    if (gain < 1e-16) break;
  }
}

RunResult maximize(const Objective& obj, const HausdorffSettings& settings) {
  if (obj.groups.empty()) throw input_error("carpet has no cells");
  if (obj.groups.size() == 1) {
    RunResult run;
    run.p = {1.0};
    run.value = obj.parts(run.p).value;
    run.converged = true;
    return run;
  }
  std::mt19937_64 rng(settings.seed);
  std::normal_distribution<double> normal(0.0, 1.5);
  RunResult best;
  bool anyConverged = false;
  int restarts = std::max(1, settings.restarts);
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x(obj.groups.size(), 0.0);
    if (r > 0)
      for (double& v : x) v = normal(rng);
    RunResult run = ascend(obj, std::move(x), settings.maxIterations, settings.tol);
    polish(obj, run.p, run.value);
    anyConverged = anyConverged || run.converged;
    if (run.value > best.value) best = std::move(run);
  }
  if (!anyConverged)
    throw numeric_error("hausdorff optimizer did not converge; best value " +
                        format_double(best.value));
  return best;
}

}  // namespace

double hausdorff_dimension_lg(const LGCarpet& carpet, const HausdorffSettings& settings) {
  return maximize(build_objective(carpet), settings).value;
}

std::vector<double> lg_maximizer(const LGCarpet& carpet, const HausdorffSettings& settings) {
  Objective obj = build_objective(carpet);
  RunResult run = maximize(obj, settings);
  std::vector<double> multiplicity(obj.groups.size(), 0.0);
  for (std::size_t g : obj.cellToGroup) multiplicity[g] += 1.0;
  std::vector<double> cells;
  cells.reserve(obj.cellToGroup.size());
  for (std::size_t g : obj.cellToGroup) cells.push_back(run.p[g] / multiplicity[g]);
  return cells;
}

double lg_objective(const LGCarpet& carpet, const std::vector<double>& p) {
  std::vector<double> logc;
  std::vector<double> logd;
  std::vector<int> colOf;
  int col = 0;
  for (const LGColumn& column : carpet.columns) {
    if (column.cells.empty()) continue;
    logc.push_back(std::log(column.width.val));
    for (const LGCell& cell : column.cells) {
      logd.push_back(std::log(cell.height.val));
      colOf.push_back(col);
    }
    ++col;
  }
  if (p.size() != logd.size())
    throw input_error("distribution length does not match the cell count");
  double mass = 0.0;
  for (double v : p) {
    if (v < 0.0) throw input_error("distribution entries must be nonnegative");
    mass += v;
  }
  if (std::fabs(mass - 1.0) > 1e-3)
    throw input_error("distribution must sum to 1");
  std::vector<double> q(logc.size(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) q[colOf[k]] += p[k];
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    A += p[k] * (std::log(q[colOf[k]]) - std::log(p[k]));
    B -= p[k] * logd[k];
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    C += q[i] * std::log(q[i]);
    D += q[i] * logc[i];
  }
  return A / B + (C == 0.0 ? 0.0 : C / D);
}

}  // namespace fracdim
