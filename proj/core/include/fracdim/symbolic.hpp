#pragma once

#include <cstddef>
#include <vector>

#include "fracdim/systems.hpp"

namespace fracdim {

inline constexpr std::size_t kWordBudget = 10'000'000;

// Finite composition of carpet maps with cached axis-wise contraction
// products. The empty word is the identity (cW = dW = 1). Products stay
// exact when the carpet entries are exact.
struct Word {
  std::vector<int> indices;
  Num cW;
  Num dW;

  Num alpha1() const;  // max(cW, dW): the longer rectangle side
  Num alpha2() const;  // min(cW, dW): the shorter rectangle side
};

// All maps^depth words of the given length. Throws budget_error when the
// count exceeds the budget.
std::vector<Word> iterate_words(const Carpet& carpet, int depth,
                                std::size_t budget = kWordBudget);

// The antichain of words whose shorter side first drops below r: every
// returned word w has alpha2(w) < r <= alpha2(parent of w).
std::vector<Word> r_stopping(const Carpet& carpet, const Num& r,
                             std::size_t budget = kWordBudget);

// Eventually-periodic infinite index sequence.
struct SymbolicSequence {
  std::vector<int> preamble;
  std::vector<int> period;  // nonempty

  int at(std::size_t k) const;
};

struct ApproximateSquare {
  Num x0;
  Num y0;
  Num width;   // horizontal extent of the depth-k1 cylinder
  Num height;  // vertical extent of the depth-k2 cylinder
  int k1 = 0;
  int k2 = 0;
  Num r;
};

// The rectangle with both sides comparable to r along the given sequence:
// k1 is the unique depth with c(i|k1+1) < r <= c(i|k1), k2 the analogue for
// the vertical products. Requires r small enough that k1, k2 >= 1.
ApproximateSquare approximate_square(const Carpet& carpet, const SymbolicSequence& seq,
                                     const Num& r);

// Composition of the first k maps of the sequence.
AffineMap2D cylinder_map(const Carpet& carpet, const SymbolicSequence& seq, int k);

// min over letters of min(c,d) / max over letters of max(c,d).
Num alpha_min(const Carpet& carpet);
Num alpha_max(const Carpet& carpet);

}  // namespace fracdim
