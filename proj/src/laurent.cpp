#include "tbg/laurent.hpp"

#include <algorithm>

namespace tbg {

void LaurentSeries::normalize() {
  size_t drop = 0;
  while (drop < c_.size() && c_[drop].is_zero()) ++drop;
  if (drop) {
    c_.erase(c_.begin(), c_.begin() + drop);
    lo_ += static_cast<int>(drop);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) lo_ = whi_ + 1;
}

LaurentSeries LaurentSeries::constant(const Cyclo& v, int wlo, int whi) {
  LaurentSeries s(wlo, whi);
  if (!v.is_zero() && 0 >= wlo && 0 <= whi) {
    s.lo_ = 0;
    s.c_ = {v};
  }
  return s;
}

LaurentSeries LaurentSeries::from_coeffs(int lo, std::vector<Cyclo> c, int wlo,
                                         int whi) {
  LaurentSeries s(wlo, whi);
  s.lo_ = lo;
  s.c_ = std::move(c);
  if (s.lo_ + static_cast<int>(s.c_.size()) - 1 > whi)
    s.c_.resize(whi - s.lo_ + 1 > 0 ? whi - s.lo_ + 1 : 0);
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::resolvent(const Cyclo& c, int wlo, int whi) {
  LaurentSeries s(wlo, whi);
  if (c.is_zero()) {
    if (-1 >= wlo && -1 <= whi) {
      s.lo_ = -1;
      s.c_ = {Cyclo::one()};
    }
    return s;
  }
  // 1/(c+t) = sum_j (-1)^j c^{-(j+1)} t^j
  Cyclo cinv = c.inv();
  s.lo_ = std::max(0, wlo);
  Cyclo p = cinv;
  for (int o = 0; o <= whi; ++o) {
    if (o >= s.lo_) s.c_.push_back(p);
    p = -(p * cinv);
  }
  s.normalize();
  return s;
}

Cyclo LaurentSeries::coeff(int order) const {
  if (order < lo_ || order >= lo_ + static_cast<int>(c_.size())) return Cyclo::zero();
  return c_[order - lo_];
}

Cyclo LaurentSeries::residue() const {
  if (-1 < wlo_ || -1 > whi_)
    throw WindowViolation("order -1 outside retained Laurent window");
  return coeff(-1);
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  LaurentSeries s(std::max(wlo_, o.wlo_), std::min(whi_, o.whi_));
  if (s.wlo_ > s.whi_) throw std::invalid_argument("incompatible Laurent windows");
  int lo = std::min(lo_, o.lo_);
  int hi = s.whi_;
  if (lo > hi) return s;
  std::vector<Cyclo> c(hi - lo + 1);
  for (int x = lo; x <= hi; ++x) c[x - lo] = coeff(x) + o.coeff(x);
  s.lo_ = lo;
  s.c_ = std::move(c);
  s.normalize();
  return s;
}

void LaurentSeries::add_in_place(const LaurentSeries& o) { *this = *this + o; }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  // exact orders: below lo_+o.lo_ everything is zero; above
  // min(whi_+o.min, o.whi_+min) unknown terms could contribute
  if (is_zero() || o.is_zero()) {
    LaurentSeries s(wlo_ + o.wlo_, whi_ + o.whi_);
    return s;
  }
  int lo = lo_ + o.lo_;
  int hi = std::min(whi_ + o.lo_, o.whi_ + lo_);
  LaurentSeries s(lo, hi);
  if (lo > hi) return s;
  std::vector<Cyclo> c(hi - lo + 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int ord = lo_ + static_cast<int>(i) + o.lo_ + static_cast<int>(j);
      if (ord > hi) break;
      c[ord - lo] += c_[i] * o.c_[j];
    }
  }
  s.lo_ = lo;
  s.c_ = std::move(c);
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::scaled(const Cyclo& k) const {
  LaurentSeries s(wlo_, whi_);
  if (k.is_zero() || is_zero()) return s;
  s.lo_ = lo_;
  s.c_.reserve(c_.size());
  for (const auto& x : c_) s.c_.push_back(x * k);
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::div_linear(const Cyclo& c) const {
  if (c.is_zero()) {
    // exact division by t: shift all orders down one
    LaurentSeries s(wlo_ - 1, whi_ - 1);
    s.lo_ = lo_ - 1;
    s.c_ = c_;
    if (s.c_.empty()) s.lo_ = s.whi_ + 1;
    return s;
  }
  // y_o = (x_o - y_{o-1}) / c, from the lowest order up
  LaurentSeries s(wlo_, whi_);
  if (is_zero()) return s;
  Cyclo cinv = c.inv();
  s.lo_ = lo_;
  s.c_.resize(whi_ - lo_ + 1);
  Cyclo prev = Cyclo::zero();
  for (int o = lo_; o <= whi_; ++o) {
    Cyclo y = (coeff(o) - prev) * cinv;
    s.c_[o - lo_] = y;
    prev = y;
  }
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::truncated(int new_hi) const {
  LaurentSeries s(wlo_, std::min(whi_, new_hi));
  if (s.wlo_ > s.whi_) throw std::invalid_argument("empty window after truncation");
  s.lo_ = lo_;
  s.c_ = c_;
  int keep = s.whi_ - lo_ + 1;
  if (keep < 0) keep = 0;
  if (static_cast<int>(s.c_.size()) > keep) s.c_.resize(keep);
  s.normalize();
  return s;
}

}  // namespace tbg
