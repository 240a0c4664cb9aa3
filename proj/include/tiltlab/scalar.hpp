#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace tiltlab {

/// Ground field: the rationals or a prime field F_p with p < 2^31.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    std::uint32_t p = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint64_t p);

    [[nodiscard]] bool is_rational() const { return kind == Kind::Rationals; }
    /// 0 for the rationals.
    [[nodiscard]] std::uint32_t characteristic() const { return is_rational() ? 0 : p; }
    [[nodiscard]] std::string to_string() const;
    static FieldSpec parse(const std::string &text);

    bool operator==(const FieldSpec &) const = default;
};

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An exact scalar. Rationals are kept in lowest terms by GMP; prime field
/// elements are least nonnegative residues. Both operands of a binary
/// operation must live in the same field.
class Scalar {
  public:
    Scalar() = default;
    Scalar(const FieldSpec &field, long value);
    Scalar(const FieldSpec &field, const mpq_class &value);

    static Scalar zero(const FieldSpec &field) { return Scalar(field, 0L); }
    static Scalar one(const FieldSpec &field) { return Scalar(field, 1L); }
    /// Parses "n", "-n", "n/d" into the given field.
    static Scalar parse(const FieldSpec &field, const std::string &text);

    [[nodiscard]] FieldSpec field() const;
    [[nodiscard]] bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
    [[nodiscard]] bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
    [[nodiscard]] Scalar inverse() const;
    [[nodiscard]] std::string to_string() const;
    /// Rational value; for F_p the residue as an integer.
    [[nodiscard]] mpq_class rational() const { return p_ ? mpq_class(r_) : q_; }

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o) { return *this *= o.inverse(); }
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    friend bool operator==(const Scalar &a, const Scalar &b) {
        return a.p_ == b.p_ && (a.p_ ? a.r_ == b.r_ : a.q_ == b.q_);
    }

  private:
    void check_same(const Scalar &o) const {
        if (p_ != o.p_)
            throw FieldError("scalar field mismatch");
    }

    mpq_class q_;
    std::uint32_t p_ = 0;
    std::uint32_t r_ = 0;
};

} // namespace tiltlab
