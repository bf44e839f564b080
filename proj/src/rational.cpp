#include "noetherlab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace noetherlab {

double toDouble(const Rational& r) {
    return r.convert_to<double>();
}

std::string toString(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// ---------------------------------------------------------------------------
// Frac
// ---------------------------------------------------------------------------

namespace {
long long checkedNarrow(__int128 v, const char* what) {
    if (v > INT64_MAX / 2 || v < INT64_MIN / 2)
        throw NlError(std::string("exponent overflow in ") + what);
    return static_cast<long long>(v);
}
}  // namespace

Frac::Frac(long long n, long long d) : n_(n), d_(d) {
    if (d_ == 0) throw NlError("zero denominator in exponent fraction");
    reduce();
}

Frac Frac::fromRational(const Rational& r) {
    BigInt n = boost::multiprecision::numerator(r);
    BigInt d = boost::multiprecision::denominator(r);
    if (n > INT64_MAX / 4 || n < INT64_MIN / 4 || d > INT64_MAX / 4)
        throw NlError("exponent out of range");
    return Frac(n.convert_to<long long>(), d.convert_to<long long>());
}

void Frac::reduce() {
    if (d_ < 0) {
        n_ = -n_;
        d_ = -d_;
    }
    long long g = std::gcd(n_ < 0 ? -n_ : n_, d_);
    if (g > 1) {
        n_ /= g;
        d_ /= g;
    }
}

Frac Frac::operator+(const Frac& o) const {
    __int128 n = (__int128)n_ * o.d_ + (__int128)o.n_ * d_;
    __int128 d = (__int128)d_ * o.d_;
    return Frac(checkedNarrow(n, "add"), checkedNarrow(d, "add"));
}

Frac Frac::operator*(const Frac& o) const {
    __int128 n = (__int128)n_ * o.n_;
    __int128 d = (__int128)d_ * o.d_;
    return Frac(checkedNarrow(n, "mul"), checkedNarrow(d, "mul"));
}

bool Frac::operator<(const Frac& o) const {
    return (__int128)n_ * o.d_ < (__int128)o.n_ * d_;
}

std::string Frac::str() const {
    std::string s = std::to_string(n_);
    if (d_ != 1) s += "/" + std::to_string(d_);
    return s;
}

// ---------------------------------------------------------------------------
// GammaPoly
// ---------------------------------------------------------------------------

GammaPoly::GammaPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

GammaPoly GammaPoly::gamma() {
    GammaPoly p;
    p.c_ = {Rational(0), Rational(1)};
    return p;
}

GammaPoly GammaPoly::fromCoeffs(std::vector<Rational> c) {
    GammaPoly p;
    p.c_ = std::move(c);
    p.trim();
    return p;
}

void GammaPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational GammaPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[k];
}

Rational GammaPoly::leading() const {
    return c_.empty() ? Rational(0) : c_.back();
}

GammaPoly GammaPoly::operator+(const GammaPoly& o) const {
    GammaPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

GammaPoly GammaPoly::operator-() const {
    GammaPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

GammaPoly GammaPoly::operator-(const GammaPoly& o) const {
    return *this + (-o);
}

GammaPoly GammaPoly::operator*(const GammaPoly& o) const {
    if (isZero() || o.isZero()) return GammaPoly();
    GammaPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
}

void GammaPoly::divmod(const GammaPoly& a, const GammaPoly& b, GammaPoly& q, GammaPoly& r) {
    if (b.isZero()) throw NlError("division by zero gamma-polynomial");
    q = GammaPoly();
    r = a;
    const int db = b.degree();
    const Rational lb = b.leading();
    while (!r.isZero() && r.degree() >= db) {
        int k = r.degree() - db;
        Rational c = r.leading() / lb;
        std::vector<Rational> qc(static_cast<std::size_t>(k) + 1, Rational(0));
        qc[k] = c;
        GammaPoly t = GammaPoly::fromCoeffs(std::move(qc));
        q = q + t;
        r = r - t * b;
    }
}

GammaPoly GammaPoly::gcd(GammaPoly a, GammaPoly b) {
    while (!b.isZero()) {
        GammaPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.isZero()) return a;
    return a.monic();
}

GammaPoly GammaPoly::scaled(const Rational& s) const {
    GammaPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

GammaPoly GammaPoly::monic() const {
    if (isZero()) return *this;
    return scaled(Rational(1) / leading());
}

GammaPoly GammaPoly::primitive() const {
    if (isZero()) return *this;
    BigInt lcm = 1, g = 0;
    for (const auto& c : c_) {
        BigInt d = boost::multiprecision::denominator(c);
        lcm = boost::multiprecision::lcm(lcm, d);
    }
    GammaPoly s = scaled(Rational(lcm));
    for (const auto& c : s.c_) {
        BigInt n = boost::multiprecision::numerator(c);
        if (n < 0) n = -n;
        g = boost::multiprecision::gcd(g, n);
    }
    if (g > 1) s = s.scaled(Rational(1, g));
    if (s.leading() < 0) s = -s;
    return s;
}

Rational GammaPoly::evalAt(const Rational& g) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * g + *it;
    return v;
}

double GammaPoly::evalAt(double g) const {
    double v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * g + toDouble(*it);
    return v;
}

std::vector<Rational> GammaPoly::rationalRoots() const {
    std::vector<Rational> roots;
    if (degree() < 1) return roots;
    GammaPoly p = primitive();
    if (p.coeff(0) == 0) roots.push_back(Rational(0));
    BigInt a0 = 0;
    for (const auto& c : p.coeffs()) {
        if (c != 0) {
            a0 = boost::multiprecision::numerator(c);
            break;
        }
    }
    if (a0 < 0) a0 = -a0;
    BigInt an = boost::multiprecision::numerator(p.leading());
    if (an < 0) an = -an;
    if (a0 == 0 || a0 > 1000 || an > 1000) return roots;  // only small candidates
    auto divisors = [](long long v) {
        std::vector<long long> d;
        for (long long i = 1; i * i <= v; ++i)
            if (v % i == 0) {
                d.push_back(i);
                d.push_back(v / i);
            }
        return d;
    };
    for (long long p0 : divisors(a0.convert_to<long long>()))
        for (long long q0 : divisors(an.convert_to<long long>()))
            for (int s : {1, -1}) {
                Rational cand(s * p0, q0);
                if (evalAt(cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string GammaPoly::str() const {
    if (isZero()) return "0";
    std::string out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational c = c_[k];
        if (c == 0) continue;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string coefs = toString(a);
        if (k == 0) {
            out += coefs;
        } else {
            if (a != 1) out += coefs + "*";
            out += (k == 1) ? "gamma" : "gamma^" + std::to_string(k);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// GammaRat
// ---------------------------------------------------------------------------

GammaRat::GammaRat(GammaPoly n, GammaPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.isZero()) throw NlError("zero denominator in Q(gamma)");
    normalize();
}

void GammaRat::normalize() {
    if (num_.isZero()) {
        den_ = GammaPoly(1);
        return;
    }
    GammaPoly g = GammaPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        GammaPoly q, r;
        GammaPoly::divmod(num_, g, q, r);
        num_ = q;
        GammaPoly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rational ld = den_.leading();
    if (ld != 1) {
        num_ = num_.scaled(Rational(1) / ld);
        den_ = den_.scaled(Rational(1) / ld);
    }
}

bool GammaRat::isOne() const {
    return den_ == GammaPoly(1) && num_ == GammaPoly(1);
}

Rational GammaRat::asRational() const {
    if (!isRationalConst()) throw NlError("coefficient is not a plain rational: " + str());
    if (num_.isZero()) return Rational(0);
    return num_.coeff(0) / den_.coeff(0);
}

GammaRat GammaRat::operator+(const GammaRat& o) const {
    return GammaRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

GammaRat GammaRat::operator-(const GammaRat& o) const {
    return GammaRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

GammaRat GammaRat::operator-() const {
    GammaRat r = *this;
    r.num_ = -r.num_;
    return r;
}

GammaRat GammaRat::operator*(const GammaRat& o) const {
    return GammaRat(num_ * o.num_, den_ * o.den_);
}

GammaRat GammaRat::operator/(const GammaRat& o) const {
    if (o.isZero()) throw NlError("division by zero in Q(gamma)");
    return GammaRat(num_ * o.den_, den_ * o.num_);
}

GammaRat GammaRat::inverse() const {
    if (isZero()) throw NlError("inverse of zero in Q(gamma)");
    return GammaRat(den_, num_);
}

Rational GammaRat::evalAt(const Rational& g) const {
    Rational d = den_.evalAt(g);
    if (d == 0)
        throw ExcludedValueError("gamma = " + toString(g) + " excluded by coefficient " + str());
    return num_.evalAt(g) / d;
}

double GammaRat::evalAt(double g) const {
    double d = den_.evalAt(g);
    if (d == 0.0) throw ExcludedValueError("gamma value excluded by coefficient " + str());
    return num_.evalAt(g) / d;
}

std::string GammaRat::str() const {
    if (den_ == GammaPoly(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace noetherlab
