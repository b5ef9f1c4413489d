#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nsbox {

/// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
/// Limbs are little-endian with no trailing zeros; zero has an empty limb
/// vector and sign 0. Division truncates toward zero; the remainder takes
/// the dividend's sign.
class BigInt {
public:
    BigInt() = default;
    BigInt(int64_t v);
    static BigInt from_u64(uint64_t v);
    static BigInt from_decimal(std::string_view s);

    bool is_zero() const { return limbs_.empty(); }
    int sign() const { return sign_; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const { return sign_ > 0 && limbs_.size() == 1 && limbs_[0] == 1; }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    static void divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem);
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    int compare(const BigInt& o) const;
    bool operator==(const BigInt& o) const { return compare(o) == 0; }
    bool operator!=(const BigInt& o) const { return compare(o) != 0; }
    bool operator<(const BigInt& o) const { return compare(o) < 0; }
    bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
    bool operator>(const BigInt& o) const { return compare(o) > 0; }
    bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

    static BigInt gcd(BigInt a, BigInt b);

    std::size_t bit_length() const;
    bool fits_u64() const;
    uint64_t to_u64() const; // valid only when fits_u64() and nonnegative

    std::string to_decimal() const;

    /// value ~= mantissa * 2^exponent with |mantissa| in [0.5, 1), or (0, 0).
    void frexp2(double& mantissa, long& exponent) const;
    double to_double() const;

private:
    int sign_ = 0;
    std::vector<uint32_t> limbs_;

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

/// Exact rational number. Always stored reduced with a positive denominator;
/// zero is 0/1. Serializes as "p/q" (or "p" when the denominator is 1).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t v) : num_(v), den_(1) {}
    Rational(int64_t num, int64_t den);
    Rational(BigInt num, BigInt den);

    static Rational parse(std::string_view s);
    std::string str() const;

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational abs() const;
    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    int compare(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return compare(o) < 0; }
    bool operator<=(const Rational& o) const { return compare(o) <= 0; }
    bool operator>(const Rational& o) const { return compare(o) > 0; }
    bool operator>=(const Rational& o) const { return compare(o) >= 0; }

    double to_double() const;

private:
    BigInt num_;
    BigInt den_;
    void reduce();
};

} // namespace nsbox
