#pragma once

// Truncated Laurent series over Q(zeta12) in a local variable t (the offset
// from an expansion point). A series knows the window [window_lo, window_hi]
// of orders it retains exactly: orders below the leading stored order are
// exactly zero, orders above window_hi have been truncated away.

#include <vector>
#include <stdexcept>

#include "tbg/cyclo.hpp"

namespace tbg {

struct WindowViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LaurentSeries {
 public:
  // zero series on the given window
  LaurentSeries(int window_lo, int window_hi)
      : wlo_(window_lo), whi_(window_hi), lo_(window_hi + 1) {
    if (window_lo > window_hi) throw std::invalid_argument("empty Laurent window");
  }

  static LaurentSeries constant(const Cyclo& v, int window_lo, int window_hi);
  // coefficients c[i] for orders lo+i, exact window [window_lo, window_hi]
  static LaurentSeries from_coeffs(int lo, std::vector<Cyclo> c, int window_lo,
                                   int window_hi);
  // expansion of 1/(c + t); c == 0 gives exactly 1/t
  static LaurentSeries resolvent(const Cyclo& c, int window_lo, int window_hi);

  int window_lo() const { return wlo_; }
  int window_hi() const { return whi_; }
  bool is_zero() const { return c_.empty(); }
  int min_order() const { return lo_; }  // window_hi+1 when zero

  Cyclo coeff(int order) const;

  // coefficient of order -1; throws WindowViolation if -1 was truncated away
  Cyclo residue() const;

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries scaled(const Cyclo& k) const;

  // divide by (c + t); exact, loses one retained order when c == 0
  LaurentSeries div_linear(const Cyclo& c) const;

  // shrink the retained window from above
  LaurentSeries truncated(int new_hi) const;

  void add_in_place(const LaurentSeries& o);

 private:
  void normalize();
  int wlo_, whi_;
  int lo_;
  std::vector<Cyclo> c_;
};

}  // namespace tbg
