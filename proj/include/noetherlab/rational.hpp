/// @file rational.hpp
/// @brief Exact arithmetic: big rationals, small exponent fractions,
///        polynomials in gamma and the coefficient field Q(gamma).

#ifndef NOETHERLAB_RATIONAL_HPP
#define NOETHERLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace noetherlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct NlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : NlError {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p) : NlError(msg), pos(p) {}
};
struct EvalError : NlError {
    using NlError::NlError;
};
struct ExcludedValueError : EvalError {
    using EvalError::EvalError;
};
struct ReduceStallError : NlError {
    using NlError::NlError;
};

double toDouble(const Rational& r);
std::string toString(const Rational& r);

/// Small exact fraction used for exponents. Overflow throws.
class Frac {
public:
    Frac() : n_(0), d_(1) {}
    Frac(long long n) : n_(n), d_(1) {}
    Frac(long long n, long long d);
    static Frac fromRational(const Rational& r);

    long long num() const { return n_; }
    long long den() const { return d_; }
    bool isZero() const { return n_ == 0; }
    bool isInteger() const { return d_ == 1; }

    Frac operator-() const { return Frac(-n_, d_); }
    Frac operator+(const Frac& o) const;
    Frac operator-(const Frac& o) const { return *this + (-o); }
    Frac operator*(const Frac& o) const;
    bool operator==(const Frac& o) const { return n_ == o.n_ && d_ == o.d_; }
    bool operator!=(const Frac& o) const { return !(*this == o); }
    bool operator<(const Frac& o) const;

    double toDouble() const { return double(n_) / double(d_); }
    Rational toRational() const { return Rational(n_, d_); }
    std::string str() const;

private:
    long long n_, d_;
    void reduce();
};

/// Dense polynomial in gamma with rational coefficients.
class GammaPoly {
public:
    GammaPoly() = default;
    explicit GammaPoly(const Rational& c);
    explicit GammaPoly(long long c) : GammaPoly(Rational(c)) {}
    static GammaPoly gamma();
    static GammaPoly fromCoeffs(std::vector<Rational> c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool isZero() const { return c_.empty(); }
    bool isConstant() const { return c_.size() <= 1; }
    Rational coeff(int k) const;
    Rational leading() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    GammaPoly operator+(const GammaPoly& o) const;
    GammaPoly operator-(const GammaPoly& o) const;
    GammaPoly operator-() const;
    GammaPoly operator*(const GammaPoly& o) const;
    bool operator==(const GammaPoly& o) const { return c_ == o.c_; }
    bool operator!=(const GammaPoly& o) const { return c_ != o.c_; }

    /// Euclidean division; o must be nonzero.
    static void divmod(const GammaPoly& a, const GammaPoly& b, GammaPoly& q, GammaPoly& r);
    static GammaPoly gcd(GammaPoly a, GammaPoly b);

    GammaPoly scaled(const Rational& s) const;
    GammaPoly monic() const;
    /// Multiplies by a rational so all coefficients are coprime integers with
    /// positive leading coefficient.
    GammaPoly primitive() const;

    Rational evalAt(const Rational& g) const;
    double evalAt(double g) const;
    /// Rational roots (for pretty-printing conditions like gamma != 1).
    std::vector<Rational> rationalRoots() const;

    std::string str() const;

private:
    std::vector<Rational> c_;  // c_[k] * gamma^k, no trailing zeros
    void trim();
};

/// Element of Q(gamma): quotient of two gamma-polynomials, gcd-reduced,
/// denominator monic and nonzero.
class GammaRat {
public:
    GammaRat() : num_(), den_(GammaPoly(1)) {}
    GammaRat(const Rational& c) : num_(GammaPoly(c)), den_(GammaPoly(1)) {}
    GammaRat(long long c) : GammaRat(Rational(c)) {}
    GammaRat(GammaPoly n, GammaPoly d);
    static GammaRat gamma() { return GammaRat(GammaPoly::gamma(), GammaPoly(1)); }
    static GammaRat fromFrac(const Frac& f) { return GammaRat(f.toRational()); }

    const GammaPoly& num() const { return num_; }
    const GammaPoly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isOne() const;
    /// True when the value is a plain rational (denominator 1, constant numerator).
    bool isRationalConst() const { return num_.isConstant() && den_.isConstant(); }
    Rational asRational() const;

    GammaRat operator+(const GammaRat& o) const;
    GammaRat operator-(const GammaRat& o) const;
    GammaRat operator-() const;
    GammaRat operator*(const GammaRat& o) const;
    GammaRat operator/(const GammaRat& o) const;
    bool operator==(const GammaRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const GammaRat& o) const { return !(*this == o); }

    GammaRat inverse() const;
    /// Exact evaluation at a rational gamma; throws ExcludedValueError when the
    /// denominator vanishes there.
    Rational evalAt(const Rational& g) const;
    double evalAt(double g) const;

    std::string str() const;

private:
    GammaPoly num_, den_;
    void normalize();
};

}  // namespace noetherlab

#endif
