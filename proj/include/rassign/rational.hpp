#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace rassign {

// Exact fraction in lowest terms with a positive denominator.
// Values that fit in int64 stay inline; anything larger moves to a GMP rational.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design for literals
    Rational(std::int64_t num, std::int64_t den);

    Rational(const Rational& other);
    Rational(Rational&& other) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&& other) noexcept = default;
    ~Rational();

    // Accepts "num/den" or a bare integer; throws InputError on malformed text or zero denominator.
    static Rational parse(std::string_view text);

    // Always "num/den", including "0/1" and "k/1".
    std::string to_string() const;
    std::string numerator_string() const;
    std::string denominator_string() const;

    int sign() const;
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs);
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    struct Big;
    struct BigDeleter {
        void operator()(Big* p) const noexcept;
    };

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<Big, BigDeleter> big_;

    static std::unique_ptr<Big, BigDeleter> make_big(Big value);
    static std::unique_ptr<Big, BigDeleter> make_big();

    bool try_add_small(const Rational& rhs, bool subtract);
    bool try_mul_small(const Rational& rhs, bool divide);
    void slow_op(const Rational& rhs, char op);
    void demote_if_small();
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace rassign
