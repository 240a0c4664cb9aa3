#include "tiltlab/scalar.hpp"

#include <cctype>

namespace tiltlab {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::uint32_t reduce_mod(const mpz_class &z, std::uint32_t p) {
    mpz_class r = z % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
    std::uint64_t result = 1;
    base %= p;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

} // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p >= (1ULL << 31) || !is_prime(p))
        throw FieldError("prime field modulus must be a prime below 2^31, got " + std::to_string(p));
    FieldSpec f;
    f.kind = Kind::PrimeField;
    f.p = static_cast<std::uint32_t>(p);
    return f;
}

std::string FieldSpec::to_string() const {
    return is_rational() ? "Q" : "GF(" + std::to_string(p) + ")";
}

FieldSpec FieldSpec::parse(const std::string &text) {
    if (text == "Q" || text == "QQ" || text == "rationals")
        return rationals();
    std::string digits;
    if (text.rfind("GF(", 0) == 0 && text.back() == ')')
        digits = text.substr(3, text.size() - 4);
    else if (text.rfind("F_", 0) == 0)
        digits = text.substr(2);
    if (digits.empty() || digits.size() > 10)
        throw FieldError("unknown field '" + text + "' (expected Q or GF(p))");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw FieldError("unknown field '" + text + "'");
    return prime(std::stoull(digits));
}

Scalar::Scalar(const FieldSpec &field, long value) : p_(field.characteristic()) {
    if (p_)
        r_ = reduce_mod(mpz_class(value), p_);
    else
        q_ = value;
}

Scalar::Scalar(const FieldSpec &field, const mpq_class &value) : p_(field.characteristic()) {
    if (!p_) {
        q_ = value;
        q_.canonicalize();
        return;
    }
    std::uint32_t num = reduce_mod(value.get_num(), p_);
    std::uint32_t den = reduce_mod(value.get_den(), p_);
    if (den == 0)
        throw FieldError("denominator divisible by the characteristic");
    r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * pow_mod(den, p_ - 2, p_) % p_);
}

Scalar Scalar::parse(const FieldSpec &field, const std::string &text) {
    mpq_class q;
    auto bad = [&] { return FieldError("malformed scalar '" + text + "'"); };
    if (text.empty())
        throw bad();
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool seen_digit = false, seen_slash = false;
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] == '/') {
            if (seen_slash || !seen_digit)
                throw bad();
            seen_slash = true;
            seen_digit = false;
        } else if (std::isdigit(static_cast<unsigned char>(text[k]))) {
            seen_digit = true;
        } else {
            throw bad();
        }
    }
    if (!seen_digit)
        throw bad();
    if (q.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
        throw bad();
    if (q.get_den() == 0)
        throw FieldError("zero denominator in '" + text + "'");
    q.canonicalize();
    return Scalar(field, q);
}

FieldSpec Scalar::field() const { return p_ ? FieldSpec::prime(p_) : FieldSpec::rationals(); }

Scalar Scalar::inverse() const {
    if (is_zero())
        throw FieldError("division by zero");
    Scalar out = *this;
    if (p_)
        out.r_ = pow_mod(r_, p_ - 2, p_);
    else
        out.q_ = 1 / q_;
    return out;
}

std::string Scalar::to_string() const {
    if (p_)
        return std::to_string(r_);
    if (q_.get_den() == 1)
        return q_.get_num().get_str();
    return q_.get_str();
}

Scalar &Scalar::operator+=(const Scalar &o) {
    check_same(o);
    if (p_)
        r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + o.r_) % p_);
    else
        q_ += o.q_;
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) {
    check_same(o);
    if (p_)
        r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + p_ - o.r_) % p_);
    else
        q_ -= o.q_;
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &o) {
    check_same(o);
    if (p_)
        r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * o.r_ % p_);
    else
        q_ *= o.q_;
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    if (p_)
        out.r_ = r_ ? p_ - r_ : 0;
    else
        out.q_ = -q_;
    return out;
}

} // namespace tiltlab
