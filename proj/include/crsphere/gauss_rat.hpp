#ifndef CRSPHERE_GAUSS_RAT_HPP
#define CRSPHERE_GAUSS_RAT_HPP

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

#include "errors.hpp"

namespace crs {

/// Exact Gaussian rational re + im*i. Both parts are kept canonical by GMP
/// (lowest terms, positive denominator), so operator== is structural.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(long re) : re_(re) {} // NOLINT: integer literals promote
    GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRat i() { return GaussRat(0, 1); }
    static GaussRat ratio(long num, long den, long imNum = 0, long imDen = 1) {
        if (den == 0 || imDen == 0) throw DivisionByZero();
        return GaussRat(mpq_class(num, den), mpq_class(imNum, imDen));
    }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool isZero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool isReal() const noexcept { return sgn(im_) == 0; }
    bool isOne() const noexcept { return sgn(im_) == 0 && re_ == 1; }

    GaussRat conj() const { return GaussRat(re_, -im_); }

    /// |q|^2 as a rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRat inv() const {
        if (isZero()) throw DivisionByZero();
        if (isReal()) return GaussRat(mpq_class(1 / re_));
        mpq_class n = norm();
        return GaussRat(mpq_class(re_ / n), mpq_class(-im_ / n));
    }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    GaussRat& operator+=(const GaussRat& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        if (o.isReal()) {
            re_ *= o.re_;
            im_ *= o.re_;
        } else if (isReal()) {
            im_ = re_ * o.im_;
            re_ *= o.re_;
        } else {
            mpq_class r = re_ * o.re_ - im_ * o.im_;
            im_ = re_ * o.im_ + im_ * o.re_;
            re_ = std::move(r);
        }
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inv(); }

    /// this += a * b without a temporary GaussRat in the real case.
    void addProduct(const GaussRat& a, const GaussRat& b) {
        if (a.isReal() && b.isReal()) {
            re_ += a.re_ * b.re_;
        } else {
            GaussRat t = a;
            t *= b;
            *this += t;
        }
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    /// Compact human form: "3/2", "-i", "1/2 - 1/3*i".
    std::string toString() const {
        if (isReal()) return re_.get_str();
        std::string imPart;
        mpq_class a = abs(im_);
        if (a == 1)
            imPart = "i";
        else
            imPart = a.get_str() + "*i";
        if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imPart : imPart;
        return re_.get_str() + (sgn(im_) < 0 ? " - " : " + ") + imPart;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussRat& q) { return os << q.toString(); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// "p/q" rendering of a rational, denominator always present.
inline std::string rationalString(mpq_class q) {
    q.canonicalize();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace crs

#endif // CRSPHERE_GAUSS_RAT_HPP
