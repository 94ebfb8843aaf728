#include "mldeg/numeric.hpp"

#include <cmath>
#include <cstdio>

namespace mldeg {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

BigRat parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) throw InputError("empty rational literal");

    BigRat result;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw InputError("malformed rational literal '" + text + "'");
        BigInt d(den);
        if (d == 0) throw InputError("zero denominator in '" + text + "'");
        result = BigRat(BigInt(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw InputError("malformed decimal literal '" + text + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        result = BigRat(BigInt(whole) * scale + BigInt(frac), scale);
    } else {
        if (!all_digits(s))
            throw InputError("malformed integer literal '" + text + "'");
        result = BigRat(BigInt(s));
    }
    if (negative) result = -result;
    return result;
}

std::string format_rational(const BigRat& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

BigRat rational_from_double(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite value has no rational form");
    if (x == 0.0) return BigRat(0);
    int exp = 0;
    double mantissa = std::frexp(x, &exp);  // x = mantissa * 2^exp, |mantissa| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    BigInt m(static_cast<long long>(std::ldexp(mantissa, 53)));
    exp -= 53;
    BigRat r(m);
    if (exp > 0)
        r *= BigRat(BigInt(1) << exp);
    else if (exp < 0)
        r /= BigRat(BigInt(1) << (-exp));
    return r;
}

double rational_to_double(const BigRat& value) {
    return value.convert_to<double>();
}

int64_t checked_add(int64_t a, int64_t b) {
    int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw InternalError("integer overflow in addition");
    return out;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw InternalError("integer overflow in multiplication");
    return out;
}

uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    uint64_t hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

uint64_t fnv1a64(const std::string& text) {
    return fnv1a64(text.data(), text.size());
}

std::string to_hex(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace mldeg
