#include "rassign/rational.hpp"

#include <gmpxx.h>

#include <climits>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rassign/errors.hpp"

namespace rassign {

struct Rational::Big {
    mpq_class value;
};

namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    std::uint64_t x = a < 0 ? -static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
    std::uint64_t y = b < 0 ? -static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
    while (y != 0) {
        std::uint64_t t = x % y;
        x = y;
        y = t;
    }
    return static_cast<std::int64_t>(x);
}

bool fits(i128 v) { return v <= kSmallMax && v >= -kSmallMax; }

mpq_class to_mpq(std::int64_t num, std::int64_t den) {
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num);
    mpz_set_si(q.get_den_mpz_t(), den);
    return q;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min()) {
        big_ = make_big(Big{to_mpq(num, den)});
        big_->value.canonicalize();
        demote_if_small();
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = gcd64(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? make_big(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? make_big(*other.big_) : nullptr;
    }
    return *this;
}

Rational::~Rational() = default;
void Rational::BigDeleter::operator()(Big* p) const noexcept { delete p; }

std::unique_ptr<Rational::Big, Rational::BigDeleter> Rational::make_big(Big value) {
    return std::unique_ptr<Big, BigDeleter>(new Big(std::move(value)));
}

std::unique_ptr<Rational::Big, Rational::BigDeleter> Rational::make_big() { return make_big(Big{}); }

Rational Rational::parse(std::string_view text) {
    std::string_view num_part = text;
    std::string_view den_part = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num_part = text.substr(0, slash);
        den_part = text.substr(slash + 1);
    }
    std::string_view digits = num_part;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (!all_digits(digits) || !all_digits(den_part))
        throw InputError("malformed rational '" + std::string(text) + "'");
    mpz_class num(std::string(num_part), 10);
    mpz_class den(std::string(den_part), 10);
    if (den == 0) throw InputError("zero denominator in rational '" + std::string(text) + "'");
    Rational r;
    r.big_ = make_big(Big{mpq_class(num, den)});
    r.big_->value.canonicalize();
    r.demote_if_small();
    return r;
}

std::string Rational::to_string() const {
    return numerator_string() + "/" + denominator_string();
}

std::string Rational::numerator_string() const {
    return big_ ? big_->value.get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_string() const {
    return big_ ? big_->value.get_den().get_str() : std::to_string(den_);
}

int Rational::sign() const {
    if (big_) return sgn(big_->value);
    return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
    Rational r(*this);
    if (r.big_)
        r.big_->value = -r.big_->value;
    else
        r.num_ = -r.num_;
    return r;
}

bool Rational::try_add_small(const Rational& rhs, bool subtract) {
    if (big_ || rhs.big_) return false;
    std::int64_t c = subtract ? -rhs.num_ : rhs.num_;
    std::int64_t g = gcd64(den_, rhs.den_);
    i128 num = static_cast<i128>(num_) * (rhs.den_ / g) + static_cast<i128>(c) * (den_ / g);
    i128 den = static_cast<i128>(den_ / g) * rhs.den_;
    if (num == 0) {
        num_ = 0;
        den_ = 1;
        return true;
    }
    u128 h = gcd128(num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num), static_cast<u128>(den));
    num /= static_cast<i128>(h);
    den /= static_cast<i128>(h);
    if (!fits(num) || !fits(den)) return false;
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return true;
}

bool Rational::try_mul_small(const Rational& rhs, bool divide) {
    if (big_ || rhs.big_) return false;
    std::int64_t c = rhs.num_;
    std::int64_t d = rhs.den_;
    if (divide) {
        if (c == 0) throw std::domain_error("division by zero rational");
        std::swap(c, d);
        if (d < 0) {
            c = -c;
            d = -d;
        }
    }
    std::int64_t g1 = gcd64(num_, d);
    std::int64_t g2 = gcd64(c, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    i128 num = static_cast<i128>(num_ / g1) * (c / g2);
    i128 den = static_cast<i128>(den_ / g2) * (d / g1);
    if (num == 0) {
        num_ = 0;
        den_ = 1;
        return true;
    }
    if (!fits(num) || !fits(den)) return false;
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return true;
}

void Rational::slow_op(const Rational& rhs, char op) {
    mpq_class a = big_ ? big_->value : to_mpq(num_, den_);
    mpq_class b = rhs.big_ ? rhs.big_->value : to_mpq(rhs.num_, rhs.den_);
    switch (op) {
        case '+': a += b; break;
        case '-': a -= b; break;
        case '*': a *= b; break;
        case '/':
            if (b == 0) throw std::domain_error("division by zero rational");
            a /= b;
            break;
    }
    if (!big_) big_ = make_big();
    big_->value = std::move(a);
    demote_if_small();
}

void Rational::demote_if_small() {
    const mpz_class& n = big_->value.get_num();
    const mpz_class& d = big_->value.get_den();
    if (!mpz_fits_slong_p(n.get_mpz_t()) || !mpz_fits_slong_p(d.get_mpz_t())) return;
    long nv = mpz_get_si(n.get_mpz_t());
    if (nv == LONG_MIN) return;
    num_ = nv;
    den_ = mpz_get_si(d.get_mpz_t());
    big_.reset();
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!try_add_small(rhs, false)) slow_op(rhs, '+');
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    if (!try_add_small(rhs, true)) slow_op(rhs, '-');
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    if (!try_mul_small(rhs, false)) slow_op(rhs, '*');
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (!try_mul_small(rhs, true)) slow_op(rhs, '/');
    return *this;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
    // Canonical forms never mix: a value that fits inline is always stored inline.
    if (lhs.big_ && rhs.big_) return lhs.big_->value == rhs.big_->value;
    return false;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) {
        i128 l = static_cast<i128>(lhs.num_) * rhs.den_;
        i128 r = static_cast<i128>(rhs.num_) * lhs.den_;
        return l <=> r;
    }
    mpq_class a = lhs.big_ ? lhs.big_->value : to_mpq(lhs.num_, lhs.den_);
    mpq_class b = rhs.big_ ? rhs.big_->value : to_mpq(rhs.num_, rhs.den_);
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace rassign
