#pragma once

// Arbitrary-precision nonnegative integers, wrapped around GMP.
//
// BigNat is the value currency of the whole library: expression leaves,
// evaluation results, certified lower bounds, dimension-vector entries and
// package outputs are all BigNats.  The wrapper keeps the API down to what
// the library needs, enforces nonnegativity (subtraction that would go
// negative throws), and round-trips decimal strings losslessly.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stillman {

class BigNat {
public:
    BigNat() : v_(0) {}
    BigNat(unsigned long n) : v_(n) {}
    BigNat(unsigned int n) : v_(static_cast<unsigned long>(n)) {}
    BigNat(int n) : v_(0) {
        if (n < 0) throw std::invalid_argument("BigNat: negative value");
        v_ = static_cast<unsigned long>(n);
    }

    // Parses a decimal numeral.  Throws std::invalid_argument on anything
    // that is not a plain nonempty digit string.
    explicit BigNat(std::string_view decimal) : v_(0) {
        if (decimal.empty())
            throw std::invalid_argument("BigNat: empty numeral");
        for (char c : decimal)
            if (c < '0' || c > '9')
                throw std::invalid_argument("BigNat: invalid digit in numeral");
        v_ = mpz_class(std::string(decimal), 10);
    }

    // Parses a lowercase hexadecimal numeral (no 0x prefix).
    static BigNat from_hex(std::string_view hex) {
        if (hex.empty()) throw std::invalid_argument("BigNat: empty numeral");
        for (char c : hex)
            if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
                throw std::invalid_argument("BigNat: invalid hex digit in numeral");
        BigNat r;
        r.v_ = mpz_class(std::string(hex), 16);
        return r;
    }

    static BigNat pow2(std::uint64_t e) {
        BigNat r;
        mpz_setbit(r.v_.get_mpz_t(), e);
        return r;
    }

    // a^b for machine-word exponents (used where the exponent is already
    // known to be small enough to materialize the power).
    static BigNat pow(const BigNat& a, unsigned long b) {
        BigNat r;
        mpz_pow_ui(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b);
        return r;
    }

    BigNat& operator+=(const BigNat& o) { v_ += o.v_; return *this; }
    BigNat& operator*=(const BigNat& o) { v_ *= o.v_; return *this; }
    BigNat& operator-=(const BigNat& o) {
        if (v_ < o.v_) throw std::invalid_argument("BigNat: subtraction underflow");
        v_ -= o.v_;
        return *this;
    }

    friend BigNat operator+(BigNat a, const BigNat& b) { a += b; return a; }
    friend BigNat operator-(BigNat a, const BigNat& b) { a -= b; return a; }
    friend BigNat operator*(BigNat a, const BigNat& b) { a *= b; return a; }

    friend bool operator==(const BigNat& a, const BigNat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigNat& a, const BigNat& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigNat& a, const BigNat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const BigNat& a, const BigNat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const BigNat& a, const BigNat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const BigNat& a, const BigNat& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return mpz_sgn(v_.get_mpz_t()) == 0; }

    // Number of bits in the binary representation; 0 for the value 0.
    std::uint64_t bit_length() const {
        if (is_zero()) return 0;
        return mpz_sizeinbase(v_.get_mpz_t(), 2);
    }

    bool fits_ulong() const { return v_.fits_ulong_p(); }
    unsigned long as_ulong() const {
        if (!fits_ulong())
            throw std::overflow_error("BigNat: value does not fit a machine word");
        return v_.get_ui();
    }

    std::string to_string() const { return v_.get_str(10); }

    // Escape hatch for implementation files that talk to GMP directly.
    const mpz_class& raw() const { return v_; }
    mpz_class& raw() { return v_; }

private:
    mpz_class v_;
};

}  // namespace stillman
