#pragma once

// Forward-mode dual number carrying all N partial derivatives at once
// (vector-forward mode). A Dual built from a plain double is a constant with
// zero partials; the empty partials vector stands for "all zeros" so literal
// constants never allocate.
//
// Only smooth operations are provided. Non-smooth primitives (abs, floor,
// comparisons that change value) are deliberately absent from the
// differentiable path.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace moo {

class Dual {
public:
    Dual() = default;
    Dual(double v) : val_(v) {}  // NOLINT: implicit by design, constants promote
    Dual(double v, std::vector<double> partials) : val_(v), d_(std::move(partials)) {}

    // Variable i of n: value v, partials = e_i.
    static Dual seed(double v, std::size_t n, std::size_t i) {
        std::vector<double> d(n, 0.0);
        d[i] = 1.0;
        return {v, std::move(d)};
    }

    double value() const { return val_; }
    std::span<const double> partials() const { return d_; }

    double partial(std::size_t i) const { return i < d_.size() ? d_[i] : 0.0; }

    Dual operator-() const {
        Dual r(-val_, d_);
        for (auto& p : r.d_) p = -p;
        return r;
    }

    Dual& operator+=(const Dual& o) {
        val_ += o.val_;
        accumulate(o.d_, 1.0);
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        val_ -= o.val_;
        accumulate(o.d_, -1.0);
        return *this;
    }
    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }

    friend Dual operator*(const Dual& a, const Dual& b) {
        Dual r(a.val_ * b.val_);
        r.d_.assign(std::max(a.d_.size(), b.d_.size()), 0.0);
        for (std::size_t i = 0; i < a.d_.size(); ++i) r.d_[i] += a.d_[i] * b.val_;
        for (std::size_t i = 0; i < b.d_.size(); ++i) r.d_[i] += b.d_[i] * a.val_;
        return r;
    }

    friend Dual operator/(const Dual& a, const Dual& b) {
        // (a/b)' = (a'b - ab') / b^2
        Dual r(a.val_ / b.val_);
        r.d_.assign(std::max(a.d_.size(), b.d_.size()), 0.0);
        const double inv2 = 1.0 / (b.val_ * b.val_);
        for (std::size_t i = 0; i < a.d_.size(); ++i) r.d_[i] += a.d_[i] * b.val_ * inv2;
        for (std::size_t i = 0; i < b.d_.size(); ++i) r.d_[i] -= b.d_[i] * a.val_ * inv2;
        return r;
    }

    // Value-ordering only; used by algorithms that never differentiate through
    // the comparison (e.g. bound clamping is excluded from problem bodies).
    friend bool operator<(const Dual& a, const Dual& b) { return a.val_ < b.val_; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.val_ > b.val_; }

private:
    void accumulate(const std::vector<double>& src, double w) {
        if (src.size() > d_.size()) d_.resize(src.size(), 0.0);
        for (std::size_t i = 0; i < src.size(); ++i) d_[i] += w * src[i];
    }

    double val_ = 0.0;
    std::vector<double> d_;
};

// Chain rule helper: f(u) with known scalar derivative df at u.value().
inline Dual chain(const Dual& u, double f, double df) {
    std::vector<double> d(u.partials().begin(), u.partials().end());
    for (auto& p : d) p *= df;
    return {f, std::move(d)};
}

inline Dual sqrt(const Dual& u) {
    const double s = std::sqrt(u.value());
    return chain(u, s, 0.5 / s);
}

inline Dual exp(const Dual& u) {
    const double e = std::exp(u.value());
    return chain(u, e, e);
}

inline Dual log(const Dual& u) { return chain(u, std::log(u.value()), 1.0 / u.value()); }

inline Dual sin(const Dual& u) { return chain(u, std::sin(u.value()), std::cos(u.value())); }

inline Dual cos(const Dual& u) { return chain(u, std::cos(u.value()), -std::sin(u.value())); }

inline Dual pow(const Dual& u, double e) {
    return chain(u, std::pow(u.value(), e), e * std::pow(u.value(), e - 1.0));
}

}  // namespace moo
