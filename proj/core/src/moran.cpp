#include "fracdim/moran.hpp"

#include <algorithm>
#include <cmath>

#include "fracdim/errors.hpp"

namespace fracdim {

double MoranEquation::evaluate(double s) const {
  double sum = 0.0;
  for (const MoranTerm& t : terms) sum += t.weight * std::exp(s * t.logRatio);
  return sum;
}

double MoranEquation::derivative(double s) const {
  double sum = 0.0;
  for (const MoranTerm& t : terms) sum += t.weight * t.logRatio * std::exp(s * t.logRatio);
  return sum;
}

MoranEquation make_moran(std::vector<std::pair<double, double>> weightRatio) {
  if (weightRatio.empty()) throw invariant_error("moran equation with no terms");
  for (const auto& [w, r] : weightRatio) {
    if (!(w > 0.0)) throw invariant_error("moran term weight must be positive");
    if (!(r > 0.0 && r < 1.0)) throw invariant_error("moran term ratio must lie in (0,1)");
  }
  std::sort(weightRatio.begin(), weightRatio.end(),
            [](const auto& x, const auto& y) {
              if (x.second != y.second) return x.second < y.second;
              return x.first < y.first;
            });
  MoranEquation eq;
  eq.terms.reserve(weightRatio.size());
  for (const auto& [w, r] : weightRatio) eq.terms.push_back({w, r, std::log(r)});
  return eq;
}

MoranRoot solve_moran(const MoranEquation& eq, double tol) {
  if (eq.terms.empty()) throw invariant_error("moran equation with no terms");
  double lo = eq.lowerBracket;
  double hi = eq.upperBracket;
  const bool defaultBracket = !(hi > lo);
  if (defaultBracket) {
    lo = 0.0;
    double weightSum = 0.0;
    double maxRatio = 0.0;
    for (const MoranTerm& t : eq.terms) {
      weightSum += t.weight;
      maxRatio = std::max(maxRatio, t.ratio);
    }
    if (weightSum < 1.0) return {0.0, true};
    if (weightSum == 1.0) return {0.0, false};
    double guess = std::log(weightSum) / std::log(1.0 / maxRatio);
    hi = static_cast<double>(eq.terms.size()) * std::max(1.0, guess) + 1.0;
    int widenings = 0;
    while (eq.evaluate(hi) > 1.0) {
      hi *= 2.0;
      if (++widenings > 64) throw numeric_error("moran bracket widening failed");
    }
  } else {
    if (eq.evaluate(lo) < 1.0 || eq.evaluate(hi) > 1.0)
      throw numeric_error("moran bracket does not straddle 1");
  }

  double s = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > tol * std::max(1.0, std::fabs(s)); ++iter) {
    double f = eq.evaluate(s) - 1.0;
    if (f > 0.0)
      lo = s;
    else
      hi = s;
    double df = eq.derivative(s);
    double next = df != 0.0 ? s - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  return {s, false};
}

double similarity_dimension(const SimilarityIFS1D& ifs) {
  if (ifs.maps.size() <= 1) return 0.0;
  std::vector<std::pair<double, double>> terms;
  terms.reserve(ifs.maps.size());
  for (const SimilarityMap1D& m : ifs.maps) terms.emplace_back(1.0, m.ratio.val);
  return solve_moran(make_moran(std::move(terms))).value;
}

}  // namespace fracdim
