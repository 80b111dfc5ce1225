#pragma once

#include <algorithm>
#include <array>

#include "rootiso/dyadic.hpp"

namespace rootiso {

// Working precision: mantissa bit budget for enclosure endpoints. The solver
// escalates along 63, 127, 255, ... (rho -> 2*rho + 1).
struct Precision {
    int bits;

    static constexpr Precision initial() { return {63}; }
    constexpr Precision next() const { return {2 * bits + 1}; }
    friend constexpr bool operator==(Precision a, Precision b) { return a.bits == b.bits; }
    friend constexpr bool operator<(Precision a, Precision b) { return a.bits < b.bits; }
    friend constexpr bool operator>(Precision a, Precision b) { return a.bits > b.bits; }
};

enum class IvSign { Negative = -1, Zero = 0, Positive = 1, Unknown = 2 };

// Closed interval with dyadic endpoints. Every operation returns an
// enclosure of the exact result over all inputs in the operands; containment
// is the contract, never equality. Endpoints are rounded outward to
// mantissas of at most rho bits; intermediates are exact.
class Enclosure {
  public:
    Enclosure() = default;
    Enclosure(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (cmp(lo_, hi_) > 0) throw Error("enclosure with lo > hi");
    }
    static Enclosure point(Dyadic v) {
        Enclosure e;
        e.lo_ = v;
        e.hi_ = std::move(v);
        return e;
    }

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }

    bool is_point() const { return lo_ == hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Dyadic& v) const { return cmp(lo_, v) <= 0 && cmp(v, hi_) <= 0; }
    bool contains(const Enclosure& o) const { return cmp(lo_, o.lo_) <= 0 && cmp(o.hi_, hi_) <= 0; }

    Dyadic width() const { return hi_ - lo_; }
    Dyadic mid() const { return midpoint(lo_, hi_); }

    // upper bound on |x| over the enclosure
    Dyadic mag() const { return std::max(lo_.abs(), hi_.abs(), [](const Dyadic& a, const Dyadic& b) { return a < b; }); }

    friend bool operator==(const Enclosure& a, const Enclosure& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

  private:
    Dyadic lo_, hi_;
};

inline IvSign iv_sign(const Enclosure& x) {
    if (x.hi().sign() < 0) return IvSign::Negative;
    if (x.lo().sign() > 0) return IvSign::Positive;
    if (x.lo().is_zero() && x.hi().is_zero()) return IvSign::Zero;
    return IvSign::Unknown;
}

inline Enclosure iv_neg(const Enclosure& x) { return Enclosure(-x.hi(), -x.lo()); }

inline Enclosure iv_add(const Enclosure& x, const Enclosure& y, Precision rho) {
    return Enclosure((x.lo() + y.lo()).round(rho.bits, Rounding::Down),
                     (x.hi() + y.hi()).round(rho.bits, Rounding::Up));
}

inline Enclosure iv_sub(const Enclosure& x, const Enclosure& y, Precision rho) {
    return Enclosure((x.lo() - y.hi()).round(rho.bits, Rounding::Down),
                     (x.hi() - y.lo()).round(rho.bits, Rounding::Up));
}

inline Enclosure iv_mul(const Enclosure& x, const Enclosure& y, Precision rho) {
    const Dyadic &xl = x.lo(), &xh = x.hi(), &yl = y.lo(), &yh = y.hi();
    Dyadic lo, hi;
    const int xs = xl.sign() >= 0 ? 1 : (xh.sign() <= 0 ? -1 : 0);  // 0 = straddles
    const int ys = yl.sign() >= 0 ? 1 : (yh.sign() <= 0 ? -1 : 0);
    if (xs > 0) {
        if (ys > 0) {
            lo = xl * yl;
            hi = xh * yh;
        } else if (ys < 0) {
            lo = xh * yl;
            hi = xl * yh;
        } else {
            lo = xh * yl;
            hi = xh * yh;
        }
    } else if (xs < 0) {
        if (ys > 0) {
            lo = xl * yh;
            hi = xh * yl;
        } else if (ys < 0) {
            lo = xh * yh;
            hi = xl * yl;
        } else {
            lo = xl * yh;
            hi = xl * yl;
        }
    } else {
        if (ys > 0) {
            lo = xl * yh;
            hi = xh * yh;
        } else if (ys < 0) {
            lo = xh * yl;
            hi = xl * yl;
        } else {
            Dyadic a = xl * yh, b = xh * yl;
            lo = std::min(a, b, [](const Dyadic& u, const Dyadic& v) { return u < v; });
            Dyadic c = xl * yl, d = xh * yh;
            hi = std::max(c, d, [](const Dyadic& u, const Dyadic& v) { return u < v; });
        }
    }
    return Enclosure(lo.round(rho.bits, Rounding::Down), hi.round(rho.bits, Rounding::Up));
}

inline Enclosure iv_div(const Enclosure& x, const Enclosure& y, Precision rho) {
    if (y.contains_zero()) throw IntervalDivisionError{};
    std::array<const Dyadic*, 2> xs{&x.lo(), &x.hi()};
    std::array<const Dyadic*, 2> ys{&y.lo(), &y.hi()};
    bool first = true;
    Dyadic lo, hi;
    for (const Dyadic* a : xs) {
        for (const Dyadic* b : ys) {
            Dyadic d = Dyadic::div(*a, *b, rho.bits, Rounding::Down);
            Dyadic u = Dyadic::div(*a, *b, rho.bits, Rounding::Up);
            if (first || d < lo) lo = d;
            if (first || u > hi) hi = u;
            first = false;
        }
    }
    return Enclosure(std::move(lo), std::move(hi));
}

enum class IvOp { Add, Sub, Mul, Div };

inline Enclosure iv_arith(IvOp op, const Enclosure& x, const Enclosure& y, Precision rho) {
    switch (op) {
        case IvOp::Add: return iv_add(x, y, rho);
        case IvOp::Sub: return iv_sub(x, y, rho);
        case IvOp::Mul: return iv_mul(x, y, rho);
        case IvOp::Div: return iv_div(x, y, rho);
    }
    throw Error("unreachable");
}

}  // namespace rootiso
