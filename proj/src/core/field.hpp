// Exact field arithmetic: Q (arbitrary precision), F_p, and F_{p^k} given by a
// monic irreducible modulus. Values are immutable; two contexts interoperate
// only when structurally equal.

#ifndef FLATK_FIELD_HPP
#define FLATK_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace flatk {

enum class FieldKind { Rationals, Prime, Ext };

class FieldElem;

class FieldCtx {
public:
    FieldCtx() = default;  // invalid sentinel; assign before use
    static FieldCtx rationals();
    static FieldCtx prime(long p);
    // modulus = c_0 + c_1 x + ... + c_k x^k with c_k = 1, k >= 2, irreducible
    // over F_p (checked by exhaustive factor search; desk scale, k <= 12).
    static FieldCtx ext(long p, std::vector<long> modulus);
    // "Q" | "F(p)" | "F(p, x^2+x+1)"
    static FieldCtx parse(const std::string& spec);

    FieldKind kind() const { return impl_->kind; }
    bool is_rationals() const { return impl_->kind == FieldKind::Rationals; }
    bool is_finite() const { return impl_->kind != FieldKind::Rationals; }
    long characteristic() const { return impl_->kind == FieldKind::Rationals ? 0 : impl_->p; }
    // extension degree over the prime field (1 for Q and F_p)
    int degree() const { return impl_->kind == FieldKind::Ext ? int(impl_->modulus.size()) - 1 : 1; }
    const std::vector<long>& modulus() const { return impl_->modulus; }
    // number of elements, finite fields only
    long order() const;

    std::string to_string() const;

    bool operator==(const FieldCtx& o) const;
    bool operator!=(const FieldCtx& o) const { return !(*this == o); }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(long n) const;
    FieldElem from_mpq(const mpq_class& q) const;  // Rationals only
    // finite-field element from its counter index in [0, order())
    FieldElem from_index(long idx) const;
    // the class of x for Ext contexts
    FieldElem generator() const;
    FieldElem parse_elem(const std::string& s) const;
    std::vector<FieldElem> all_elements() const;  // finite, order() <= 2e6

private:
    struct Impl {
        FieldKind kind;
        long p = 0;
        std::vector<long> modulus;  // empty unless Ext
    };
    std::shared_ptr<const Impl> impl_;
    explicit FieldCtx(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

class FieldElem {
public:
    FieldElem() = default;  // invalid sentinel; assign before use

    const FieldCtx& ctx() const { return ctx_; }

    bool is_zero() const;
    bool is_one() const;
    FieldElem operator-() const;
    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;  // throws on zero divisor
    FieldElem inv() const;
    FieldElem pow(long e) const;  // e may be negative for nonzero elements
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    // total order inside one ctx: mpq order over Q, counter index over finite
    // fields. Used for canonical representatives, not for algebra.
    int cmp(const FieldElem& o) const;

    const mpq_class& rat() const { return rat_; }
    const std::vector<long>& coeffs() const { return ff_; }
    long index() const;  // counter index, finite fields

    std::string to_string() const;

    friend class FieldCtx;
    friend class Embedding;

private:
    FieldCtx ctx_;
    mpq_class rat_;         // Rationals payload, canonical (lowest terms)
    std::vector<long> ff_;  // finite payload: c_0..c_{k-1}, fully reduced mod p
    void check_same_ctx(const FieldElem& o) const;
};

// Injective homomorphism fixing the prime field. Supported: Q->Q, F_p->F_p,
// F_p->F_{p^k}, F_{p^j}->F_{p^k} with j | k. The generator image is the
// counter-least root of the source modulus in the target.
class Embedding {
public:
    static Embedding make(const FieldCtx& src, const FieldCtx& dst);

    const FieldCtx& source() const { return src_; }
    const FieldCtx& target() const { return dst_; }
    const FieldElem& generator_image() const { return gen_image_; }

    FieldElem apply(const FieldElem& e) const;
    // unique preimage of e when e lies in the image, otherwise nullopt
    std::optional<FieldElem> restrict(const FieldElem& e) const;

private:
    FieldCtx src_, dst_;
    FieldElem gen_image_;
    Embedding(FieldCtx s, FieldCtx d, FieldElem g)
        : src_(std::move(s)), dst_(std::move(d)), gen_image_(std::move(g)) {}
};

bool is_prime_long(long p);

// prime factors of |n|, sorted, deduplicated; n != 0
std::vector<mpz_class> prime_factors(const mpz_class& n);

}  // namespace flatk

#endif
