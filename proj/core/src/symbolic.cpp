#include "fracdim/symbolic.hpp"

#include <string>
#include <utility>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

const Num kZero = num_of(0LL, 1LL);
const Num kOne = num_of(1LL, 1LL);

}  // namespace

Num Word::alpha1() const { return num_cmp(cW, dW) >= 0 ? cW : dW; }
Num Word::alpha2() const { return num_cmp(cW, dW) <= 0 ? cW : dW; }

std::vector<Word> iterate_words(const Carpet& carpet, int depth, std::size_t budget) {
  if (depth < 0) throw input_error("depth must be nonnegative");
  std::vector<AffineMap2D> maps = affine_maps(carpet);
  std::size_t count = 1;
  for (int k = 0; k < depth; ++k) {
    if (count > budget / maps.size())
      throw budget_error("word budget exceeded: " + std::to_string(maps.size()) + "^" +
                         std::to_string(depth) + " words requested");
    count *= maps.size();
  }
  std::vector<Word> level;
  level.push_back(Word{{}, kOne, kOne});
  for (int k = 0; k < depth; ++k) {
    std::vector<Word> next;
    next.reserve(level.size() * maps.size());
    for (const Word& w : level) {
      for (std::size_t m = 0; m < maps.size(); ++m) {
        Word child;
        child.indices = w.indices;
        child.indices.push_back(static_cast<int>(m));
        child.cW = w.cW * maps[m].c;
        child.dW = w.dW * maps[m].d;
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Word> r_stopping(const Carpet& carpet, const Num& r, std::size_t budget) {
  if (num_cmp(r, kZero) <= 0 || num_cmp(r, kOne) >= 0)
    throw input_error("r must lie in (0,1)");
  std::vector<AffineMap2D> maps = affine_maps(carpet);
  std::vector<Word> out;
  std::vector<Word> pending;
  pending.push_back(Word{{}, kOne, kOne});
  std::size_t visited = 0;
  while (!pending.empty()) {
    Word w = std::move(pending.back());
    pending.pop_back();
    for (std::size_t m = 0; m < maps.size(); ++m) {
      if (++visited > budget) throw budget_error("word budget exceeded during r-stopping");
      Word child;
      child.indices = w.indices;
      child.indices.push_back(static_cast<int>(m));
      child.cW = w.cW * maps[m].c;
      child.dW = w.dW * maps[m].d;
      if (num_lt(child.alpha2(), r))
        out.push_back(std::move(child));
      else
        pending.push_back(std::move(child));
    }
  }
  return out;
}

int SymbolicSequence::at(std::size_t k) const {
  if (k < preamble.size()) return preamble[k];
  if (period.empty()) throw input_error("sequence period must be nonempty");
  return period[(k - preamble.size()) % period.size()];
}

AffineMap2D cylinder_map(const Carpet& carpet, const SymbolicSequence& seq, int k) {
  std::vector<AffineMap2D> maps = affine_maps(carpet);
  AffineMap2D m{kOne, kOne, kZero, kZero};
  for (int t = 0; t < k; ++t) {
    int letter = seq.at(static_cast<std::size_t>(t));
    if (letter < 0 || static_cast<std::size_t>(letter) >= maps.size())
      throw input_error("sequence letter out of range");
    const AffineMap2D& s = maps[static_cast<std::size_t>(letter)];
    m.a = m.a + m.c * s.a;
    m.b = m.b + m.d * s.b;
    m.c = m.c * s.c;
    m.d = m.d * s.d;
  }
  return m;
}

ApproximateSquare approximate_square(const Carpet& carpet, const SymbolicSequence& seq,
                                     const Num& r) {
  if (num_cmp(r, kZero) <= 0 || num_cmp(r, kOne) >= 0)
    throw input_error("r must lie in (0,1)");
  std::vector<AffineMap2D> maps = affine_maps(carpet);
  for (const AffineMap2D& m : maps) {
    const Num& longSide = num_cmp(m.c, m.d) >= 0 ? m.c : m.d;
    if (!num_lt(r, longSide))
      throw input_error("scale r = " + format_num(r) +
                        " is not below the longer side of every letter");
  }
  auto depth_for = [&](bool horizontal) -> int {
    Num prod = kOne;
    for (int k = 0; k < 4'000'000; ++k) {
      int letter = seq.at(static_cast<std::size_t>(k));
      if (letter < 0 || static_cast<std::size_t>(letter) >= maps.size())
        throw input_error("sequence letter out of range");
      const Num& ratio = horizontal ? maps[static_cast<std::size_t>(letter)].c
                                    : maps[static_cast<std::size_t>(letter)].d;
      Num next = prod * ratio;
      if (num_lt(next, r)) return k;
      prod = std::move(next);
    }
    throw budget_error("approximate-square depth exceeded the iteration budget");
  };
  int k1 = depth_for(true);
  int k2 = depth_for(false);
  if (k1 == 0 || k2 == 0)
    throw input_error(
        "scale r is too large: the depth-1 cylinder is already thinner than r along one axis");
  AffineMap2D mx = cylinder_map(carpet, seq, k1);
  AffineMap2D my = cylinder_map(carpet, seq, k2);
  ApproximateSquare q;
  q.x0 = mx.a;
  q.width = mx.c;
  q.y0 = my.b;
  q.height = my.d;
  q.k1 = k1;
  q.k2 = k2;
  q.r = r;
  if (!num_le(r, q.width) || !num_le(r, q.height))
    throw invariant_error("approximate square side fell below r");
  return q;
}

namespace {

Num letter_extreme(const Carpet& carpet, bool wantMin) {
  std::vector<AffineMap2D> maps = affine_maps(carpet);
  Num best;
  bool first = true;
  for (const AffineMap2D& m : maps) {
    Num side;
    if (wantMin)
      side = num_cmp(m.c, m.d) <= 0 ? m.c : m.d;
    else
      side = num_cmp(m.c, m.d) >= 0 ? m.c : m.d;
    if (first || (wantMin ? num_lt(side, best) : num_lt(best, side))) {
      best = side;
      first = false;
    }
  }
  return best;
}

}  // namespace

Num alpha_min(const Carpet& carpet) { return letter_extreme(carpet, true); }
Num alpha_max(const Carpet& carpet) { return letter_extreme(carpet, false); }

}  // namespace fracdim
