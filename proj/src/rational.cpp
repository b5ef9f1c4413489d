#include "rational.hpp"

#include "error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

namespace nsbox {

namespace {
constexpr uint64_t kBase = uint64_t{1} << 32;
} // namespace

BigInt::BigInt(int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // Avoid overflow negating INT64_MIN.
    uint64_t mag = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    limbs_.push_back(static_cast<uint32_t>(mag));
    if (mag >> 32) limbs_.push_back(static_cast<uint32_t>(mag >> 32));
}

BigInt BigInt::from_u64(uint64_t v) {
    BigInt r;
    if (v == 0) return r;
    r.sign_ = 1;
    r.limbs_.push_back(static_cast<uint32_t>(v));
    if (v >> 32) r.limbs_.push_back(static_cast<uint32_t>(v >> 32));
    return r;
}

BigInt BigInt::from_decimal(std::string_view s) {
    if (s.empty()) raise(ErrorCode::parse_error, "empty integer literal");
    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) raise(ErrorCode::parse_error, "integer literal has no digits");
    BigInt value;
    const BigInt chunk_base(1000000000);
    while (pos < s.size()) {
        std::size_t take = std::min<std::size_t>(9, s.size() - pos);
        uint32_t chunk = 0;
        uint32_t scale = 1;
        for (std::size_t i = 0; i < take; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9')
                raise(ErrorCode::parse_error, "invalid digit in integer literal: " + std::string(s));
            chunk = chunk * 10 + static_cast<uint32_t>(c - '0');
            scale *= 10;
        }
        value = value * (take == 9 ? chunk_base : BigInt(static_cast<int64_t>(scale))) +
                BigInt(static_cast<int64_t>(chunk));
        pos += take;
    }
    if (negative && !value.is_zero()) value.sign_ = -1;
    return value;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() >= b.size() ? b : a;
    const auto& hi = a.size() >= b.size() ? a : b;
    std::vector<uint32_t> out;
    out.reserve(hi.size() + 1);
    uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        uint64_t sum = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        out.push_back(static_cast<uint32_t>(sum));
        carry = sum >> 32;
    }
    if (carry) out.push_back(static_cast<uint32_t>(carry));
    return out;
}

// Requires |a| >= |b|.
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size());
    int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int64_t diff = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (diff < 0) {
            diff += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<uint32_t>(diff));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = out[i + j] + ai * b[j] + carry;
            out[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            uint64_t cur = out[k] + carry;
            out[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth algorithm D, base 2^32.
void BigInt::divmod_mag(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (v.empty()) raise(ErrorCode::invalid_argument, "division by zero");
    if (cmp_mag(u, v) < 0) {
        r = u;
        return;
    }
    if (v.size() == 1) {
        uint64_t d = v[0];
        uint64_t rem = 0;
        q.assign(u.size(), 0);
        for (std::size_t i = u.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | u[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;
    const int shift = std::countl_zero(v.back());

    // Normalized copies, vn top bit set, un gets one extra limb.
    std::vector<uint32_t> vn(n), un(u.size() + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        uint64_t cur = (static_cast<uint64_t>(v[i]) << shift);
        if (i > 0 && shift) cur |= v[i - 1] >> (32 - shift);
        vn[i] = static_cast<uint32_t>(cur);
    }
    for (std::size_t i = u.size(); i-- > 0;) {
        uint64_t cur = (static_cast<uint64_t>(u[i]) << shift);
        if (i > 0 && shift) cur |= u[i - 1] >> (32 - shift);
        un[i] = static_cast<uint32_t>(cur);
    }
    if (shift) un[u.size()] = static_cast<uint32_t>(u.back() >> (32 - shift));

    q.assign(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(un[j + n]) << 32) | un[j + n - 1];
        uint64_t qhat = num / vn[n - 1];
        uint64_t rhat = num % vn[n - 1];
        while (qhat >= kBase || qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
            --qhat;
            rhat += vn[n - 1];
            if (rhat >= kBase) break;
        }
        // Multiply-subtract qhat*vn from un[j .. j+n].
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            uint64_t prod = qhat * vn[i] + carry;
            carry = prod >> 32;
            int64_t diff = static_cast<int64_t>(un[i + j]) - borrow - static_cast<int64_t>(prod & 0xffffffffu);
            if (diff < 0) {
                diff += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            un[i + j] = static_cast<uint32_t>(diff);
        }
        int64_t diff = static_cast<int64_t>(un[j + n]) - borrow - static_cast<int64_t>(carry);
        bool negative = diff < 0;
        un[j + n] = static_cast<uint32_t>(diff + (negative ? static_cast<int64_t>(kBase) : 0));

        if (negative) {
            // qhat was one too large; add vn back.
            --qhat;
            uint64_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                uint64_t sum = static_cast<uint64_t>(un[i + j]) + vn[i] + c;
                un[i + j] = static_cast<uint32_t>(sum);
                c = sum >> 32;
            }
            un[j + n] = static_cast<uint32_t>(un[j + n] + c);
        }
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();

    // Denormalize remainder.
    r.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        uint64_t cur = un[i] >> shift;
        if (shift && i + 1 < un.size()) cur |= static_cast<uint64_t>(un[i + 1]) << (32 - shift);
        r[i] = static_cast<uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_;
        return r;
    }
    int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt{};
    if (c > 0) {
        r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_;
    } else {
        r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
        r.sign_ = b.sign_;
    }
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_ = BigInt::mul_mag(a.limbs_, b.limbs_);
    r.sign_ = a.sign_ * b.sign_;
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem) {
    if (den.is_zero()) raise(ErrorCode::invalid_argument, "division by zero");
    std::vector<uint32_t> q, r;
    divmod_mag(num.limbs_, den.limbs_, q, r);
    quot = BigInt{};
    rem = BigInt{};
    quot.limbs_ = std::move(q);
    rem.limbs_ = std::move(r);
    quot.sign_ = quot.limbs_.empty() ? 0 : num.sign_ * den.sign_;
    rem.sign_ = rem.limbs_.empty() ? 0 : num.sign_;
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

int BigInt::compare(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    int c = cmp_mag(limbs_, o.limbs_);
    return sign_ >= 0 ? c : -c;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return 32 * (limbs_.size() - 1) + (32 - static_cast<std::size_t>(std::countl_zero(limbs_.back())));
}

bool BigInt::fits_u64() const { return limbs_.size() <= 2; }

uint64_t BigInt::to_u64() const {
    uint64_t v = limbs_.empty() ? 0 : limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<uint64_t>(limbs_[1]) << 32;
    return v;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> mag = limbs_;
    std::string digits;
    while (!mag.empty()) {
        uint64_t rem = 0;
        for (std::size_t i = mag.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | mag[i];
            mag[i] = static_cast<uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!mag.empty() && mag.back() == 0) mag.pop_back();
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

void BigInt::frexp2(double& mantissa, long& exponent) const {
    if (is_zero()) {
        mantissa = 0.0;
        exponent = 0;
        return;
    }
    const long bits = static_cast<long>(bit_length());
    // Fold the top (up to) 64 bits into a u64, value ~= top * 2^(bits-64).
    uint64_t top = 0;
    long need = 64;
    long pos = bits;
    for (std::size_t i = limbs_.size(); i-- > 0 && need > 0;) {
        long limb_bits = (i == limbs_.size() - 1)
                             ? 32 - std::countl_zero(limbs_[i])
                             : 32;
        long use = std::min(need, limb_bits);
        uint64_t chunk = limbs_[i] >> (limb_bits - use);
        top = (top << use) | chunk;
        need -= use;
        pos -= use;
    }
    top <<= need; // pad when the number has fewer than 64 bits
    mantissa = std::ldexp(static_cast<double>(top), -64) * (sign_ < 0 ? -1.0 : 1.0);
    exponent = bits;
}

double BigInt::to_double() const {
    double m;
    long e;
    frexp2(m, e);
    return std::ldexp(m, static_cast<int>(std::min<long>(e, 5000)));
}

// ---------------------------------------------------------------------------

Rational::Rational(int64_t num, int64_t den) : num_(num), den_(den) {
    if (den == 0) raise(ErrorCode::invalid_argument, "rational with zero denominator");
    reduce();
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) raise(ErrorCode::invalid_argument, "rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        den_ = -den_;
        num_ = -num_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::parse(std::string_view s) {
    std::size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(BigInt::from_decimal(s), BigInt(1));
    }
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (den.find('/') != std::string_view::npos)
        raise(ErrorCode::parse_error, "malformed rational: " + std::string(s));
    BigInt d = BigInt::from_decimal(den);
    if (d.is_zero()) raise(ErrorCode::parse_error, "rational with zero denominator: " + std::string(s));
    return Rational(BigInt::from_decimal(num), std::move(d));
}

std::string Rational::str() const {
    if (den_.is_one()) return num_.to_decimal();
    return num_.to_decimal() + "/" + den_.to_decimal();
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::abs() const {
    Rational r = *this;
    r.num_ = r.num_.abs();
    return r;
}

Rational Rational::reciprocal() const {
    if (is_zero()) raise(ErrorCode::invalid_argument, "reciprocal of zero");
    return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) raise(ErrorCode::invalid_argument, "rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::compare(const Rational& o) const {
    return (num_ * o.den_).compare(o.num_ * den_);
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    double mn, md;
    long en, ed;
    num_.frexp2(mn, en);
    den_.frexp2(md, ed);
    long shift = en - ed;
    if (shift > 2000) return num_.sign() > 0 ? HUGE_VAL : -HUGE_VAL;
    if (shift < -2000) return 0.0;
    return std::ldexp(mn / md, static_cast<int>(shift));
}

} // namespace nsbox
