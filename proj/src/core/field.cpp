#include "field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace flatk {

namespace {

using i128 = __int128;

long mod_pos(i128 a, long p) {
    long r = long(a % p);
    return r < 0 ? r + p : r;
}

long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    if (r != 1) throw err_singular("no inverse mod " + std::to_string(p));
    return t < 0 ? t + p : t;
}

// --- dense polynomials over F_p as coefficient vectors c_0..c_d ---

void trim(std::vector<long>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = mod_pos(i128(c[i + j]) + i128(a[i]) * b[j], p);
    }
    trim(c);
    return c;
}

// remainder of a by monic b
std::vector<long> poly_rem(std::vector<long> a, const std::vector<long>& b, long p) {
    trim(a);
    long db = long(b.size()) - 1;
    while (long(a.size()) - 1 >= db) {
        long lead = a.back();
        long shift = long(a.size()) - 1 - db;
        if (lead != 0)
            for (long i = 0; i <= db; ++i)
                a[size_t(shift + i)] = mod_pos(i128(a[size_t(shift + i)]) - i128(lead) * b[size_t(i)], p);
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

bool poly_divides(const std::vector<long>& d, const std::vector<long>& f, long p) {
    return poly_rem(f, d, p).empty();
}

std::vector<long> poly_from_counter(long idx, int deg, long p) {
    // monic polynomial of the given degree, lower coefficients taken from idx
    std::vector<long> f(size_t(deg) + 1, 0);
    for (int i = 0; i < deg; ++i) {
        f[size_t(i)] = idx % p;
        idx /= p;
    }
    f[size_t(deg)] = 1;
    return f;
}

bool modulus_irreducible(const std::vector<long>& f, long p) {
    int k = int(f.size()) - 1;
    // candidate divisors: all monic polynomials of degree 1..k/2
    double budget = 0;
    for (int d = 1; d <= k / 2; ++d) {
        double n = 1;
        for (int i = 0; i < d; ++i) n *= double(p);
        budget += n;
    }
    if (budget > 2e6)
        throw DomainError("Unsupported",
                          "irreducibility search space too large for p=" + std::to_string(p) +
                              ", deg=" + std::to_string(k));
    for (int d = 1; d <= k / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx)
            if (poly_divides(poly_from_counter(idx, d, p), f, p)) return false;
    }
    return true;
}

std::string poly_to_string(const std::vector<long>& c) {
    std::ostringstream os;
    bool first = true;
    for (int i = int(c.size()) - 1; i >= 0; --i) {
        long a = c[size_t(i)];
        if (a == 0) continue;
        if (!first) os << "+";
        if (i == 0)
            os << a;
        else {
            if (a != 1) os << a;
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// parses sums of terms c, x, cx^e, c*x^e with +/- signs
std::vector<long> parse_poly(const std::string& s) {
    std::vector<long> coeffs;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
    skip_ws();
    bool expect_term = true;
    long sign = 1;
    while (i < s.size()) {
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == '+' || s[i] == '-') {
            if (expect_term && s[i] == '-') sign = -sign;
            else if (expect_term) { /* unary plus */ }
            else {
                sign = (s[i] == '-') ? -1 : 1;
            }
            expect_term = true;
            ++i;
            continue;
        }
        long coef = 1;
        bool saw_digit = false;
        if (std::isdigit((unsigned char)s[i])) {
            coef = 0;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) {
                coef = coef * 10 + (s[i] - '0');
                ++i;
            }
            saw_digit = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        long exp = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            exp = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
                    throw ParseError("bad exponent in polynomial '" + s + "'");
                exp = 0;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) {
                    exp = exp * 10 + (s[i] - '0');
                    ++i;
                }
            }
        } else if (!saw_digit) {
            throw ParseError("bad term in polynomial '" + s + "'");
        }
        if (exp > 64) throw ParseError("polynomial degree too large in '" + s + "'");
        if (coeffs.size() < size_t(exp) + 1) coeffs.resize(size_t(exp) + 1, 0);
        coeffs[size_t(exp)] += sign * coef;
        sign = 1;
        expect_term = false;
    }
    if (coeffs.empty()) throw ParseError("empty polynomial '" + s + "'");
    return coeffs;
}

}  // namespace

bool is_prime_long(long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------- FieldCtx

FieldCtx FieldCtx::rationals() {
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::Rationals;
    return FieldCtx(std::move(impl));
}

FieldCtx FieldCtx::prime(long p) {
    if (p >= (1L << 31) || !is_prime_long(p)) throw err_non_prime(p);
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::Prime;
    impl->p = p;
    return FieldCtx(std::move(impl));
}

FieldCtx FieldCtx::ext(long p, std::vector<long> modulus) {
    if (p >= (1L << 31) || !is_prime_long(p)) throw err_non_prime(p);
    for (auto& c : modulus) c = mod_pos(c, p);
    trim(modulus);
    int k = int(modulus.size()) - 1;
    if (k < 2 || k > 12)
        throw ParseError("extension modulus degree must be in [2,12], got " + std::to_string(k));
    if (modulus.back() != 1) throw ParseError("extension modulus must be monic");
    if (!modulus_irreducible(modulus, p)) throw err_reducible_modulus(poly_to_string(modulus));
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::Ext;
    impl->p = p;
    impl->modulus = std::move(modulus);
    return FieldCtx(std::move(impl));
}

FieldCtx FieldCtx::parse(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s == "Q") return rationals();
    if (s.rfind("F(", 0) == 0 && s.back() == ')') {
        std::string body = s.substr(2, s.size() - 3);
        auto comma = body.find(',');
        if (comma == std::string::npos) {
            try {
                return prime(std::stol(body));
            } catch (const std::invalid_argument&) {
                throw ParseError("bad field spec '" + spec + "'");
            } catch (const std::out_of_range&) {
                throw ParseError("bad field spec '" + spec + "'");
            }
        }
        long p;
        try {
            p = std::stol(body.substr(0, comma));
        } catch (const std::exception&) {
            throw ParseError("bad field spec '" + spec + "'");
        }
        return ext(p, parse_poly(body.substr(comma + 1)));
    }
    throw ParseError("bad field spec '" + spec + "' (expected Q, F(p) or F(p, poly))");
}

long FieldCtx::order() const {
    if (!is_finite()) throw DomainError("InfiniteField", "order() on Q");
    long q = 1;
    for (int i = 0; i < degree(); ++i) {
        if (q > (1L << 62) / impl_->p) throw DomainError("Unsupported", "field order overflow");
        q *= impl_->p;
    }
    return q;
}

std::string FieldCtx::to_string() const {
    switch (impl_->kind) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Prime: return "F(" + std::to_string(impl_->p) + ")";
        case FieldKind::Ext:
            return "F(" + std::to_string(impl_->p) + ", " + poly_to_string(impl_->modulus) + ")";
    }
    return "?";
}

bool FieldCtx::operator==(const FieldCtx& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->kind == o.impl_->kind && impl_->p == o.impl_->p &&
           impl_->modulus == o.impl_->modulus;
}

FieldElem FieldCtx::zero() const { return from_int(0); }
FieldElem FieldCtx::one() const { return from_int(1); }

FieldElem FieldCtx::from_int(long n) const {
    FieldElem e;
    e.ctx_ = *this;
    if (is_rationals()) {
        e.rat_ = mpq_class(n);
    } else {
        e.ff_.assign(size_t(degree()), 0);
        e.ff_[0] = mod_pos(n, impl_->p);
    }
    return e;
}

FieldElem FieldCtx::from_mpq(const mpq_class& q) const {
    if (!is_rationals()) throw err_ctx_mismatch("from_mpq on finite field");
    FieldElem e;
    e.ctx_ = *this;
    e.rat_ = q;
    e.rat_.canonicalize();
    return e;
}

FieldElem FieldCtx::from_index(long idx) const {
    if (!is_finite()) throw err_ctx_mismatch("from_index on Q");
    FieldElem e;
    e.ctx_ = *this;
    e.ff_.assign(size_t(degree()), 0);
    for (int i = 0; i < degree(); ++i) {
        e.ff_[size_t(i)] = idx % impl_->p;
        idx /= impl_->p;
    }
    return e;
}

FieldElem FieldCtx::generator() const {
    if (kind() != FieldKind::Ext) throw err_ctx_mismatch("generator() needs an extension field");
    return from_index(impl_->p);
}

FieldElem FieldCtx::parse_elem(const std::string& s) const {
    if (is_rationals()) {
        FieldElem e;
        e.ctx_ = *this;
        try {
            e.rat_ = mpq_class(s);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational '" + s + "'");
        }
        if (e.rat_.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        e.rat_.canonicalize();
        return e;
    }
    auto coeffs = parse_poly(s);
    if (int(coeffs.size()) > degree()) {
        if (kind() == FieldKind::Prime)
            throw ParseError("'" + s + "' is not a residue for " + to_string());
        // reduce by the modulus
        for (auto& c : coeffs) c = mod_pos(c, impl_->p);
        coeffs = poly_rem(std::move(coeffs), impl_->modulus, impl_->p);
    }
    FieldElem e;
    e.ctx_ = *this;
    e.ff_.assign(size_t(degree()), 0);
    for (size_t i = 0; i < coeffs.size(); ++i) e.ff_[i] = mod_pos(coeffs[i], impl_->p);
    return e;
}

std::vector<FieldElem> FieldCtx::all_elements() const {
    long q = order();
    if (q > 2'000'000) throw DomainError("Unsupported", "field too large to enumerate");
    std::vector<FieldElem> out;
    out.reserve(size_t(q));
    for (long i = 0; i < q; ++i) out.push_back(from_index(i));
    return out;
}

// --------------------------------------------------------------- FieldElem

void FieldElem::check_same_ctx(const FieldElem& o) const {
    if (ctx_ != o.ctx_)
        throw err_ctx_mismatch(ctx_.to_string() + " vs " + o.ctx_.to_string());
}

bool FieldElem::is_zero() const {
    if (ctx_.is_rationals()) return rat_ == 0;
    for (long c : ff_)
        if (c != 0) return false;
    return true;
}

bool FieldElem::is_one() const {
    if (ctx_.is_rationals()) return rat_ == 1;
    if (ff_.empty() || ff_[0] != 1) return false;
    for (size_t i = 1; i < ff_.size(); ++i)
        if (ff_[i] != 0) return false;
    return true;
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    if (ctx_.is_rationals()) {
        r.rat_ = -rat_;
    } else {
        long p = ctx_.characteristic();
        for (auto& c : r.ff_) c = c == 0 ? 0 : p - c;
    }
    return r;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_ctx(o);
    FieldElem r = *this;
    if (ctx_.is_rationals()) {
        r.rat_ += o.rat_;
    } else {
        long p = ctx_.characteristic();
        for (size_t i = 0; i < r.ff_.size(); ++i) r.ff_[i] = (r.ff_[i] + o.ff_[i]) % p;
    }
    return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_ctx(o);
    FieldElem r;
    r.ctx_ = ctx_;
    if (ctx_.is_rationals()) {
        r.rat_ = rat_ * o.rat_;
        return r;
    }
    long p = ctx_.characteristic();
    if (ctx_.kind() != FieldKind::Ext) {
        r.ff_.assign(1, mod_pos(i128(ff_[0]) * o.ff_[0], p));
        return r;
    }
    auto prod = poly_mul(ff_, o.ff_, p);
    prod = poly_rem(std::move(prod), ctx_.modulus(), p);
    r.ff_.assign(size_t(ctx_.degree()), 0);
    for (size_t i = 0; i < prod.size(); ++i) r.ff_[i] = prod[i];
    return r;
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw err_singular("inverse of zero in " + ctx_.to_string());
    FieldElem r;
    r.ctx_ = ctx_;
    if (ctx_.is_rationals()) {
        r.rat_ = 1 / rat_;
        return r;
    }
    long p = ctx_.characteristic();
    if (ctx_.kind() != FieldKind::Ext) {
        r.ff_.assign(1, inv_mod(ff_[0], p));
        return r;
    }
    // extended Euclid in F_p[x] against the modulus
    std::vector<long> r0 = ctx_.modulus(), r1 = ff_;
    trim(r1);
    std::vector<long> t0, t1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<long> q;
        std::vector<long> rem = r0;
        trim(rem);
        long lead_inv = inv_mod(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            long shift = long(rem.size() - r1.size());
            long c = mod_pos(i128(rem.back()) * lead_inv, p);
            if (q.size() < size_t(shift) + 1) q.resize(size_t(shift) + 1, 0);
            q[size_t(shift)] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[size_t(shift) + i] = mod_pos(i128(rem[size_t(shift) + i]) - i128(c) * r1[i], p);
            trim(rem);
        }
        auto t2_sub = poly_mul(q, t1, p);
        std::vector<long> t2 = t0;
        if (t2.size() < t2_sub.size()) t2.resize(t2_sub.size(), 0);
        for (size_t i = 0; i < t2_sub.size(); ++i) t2[i] = mod_pos(i128(t2[i]) - t2_sub[i], p);
        trim(t2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 is the gcd, a nonzero constant since the modulus is irreducible
    long scale = inv_mod(r0.empty() ? 1 : r0[0], p);
    r.ff_.assign(size_t(ctx_.degree()), 0);
    for (size_t i = 0; i < t0.size() && i < r.ff_.size(); ++i)
        r.ff_[i] = mod_pos(i128(t0[i]) * scale, p);
    // t0 may exceed the degree only transiently; reduce to be safe
    if (t0.size() > r.ff_.size()) {
        auto red = poly_rem(t0, ctx_.modulus(), p);
        r.ff_.assign(size_t(ctx_.degree()), 0);
        for (size_t i = 0; i < red.size(); ++i) r.ff_[i] = mod_pos(i128(red[i]) * scale, p);
    }
    return r;
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inv(); }

FieldElem FieldElem::pow(long e) const {
    FieldElem base = *this;
    if (e < 0) {
        base = base.inv();
        e = -e;
    }
    FieldElem acc = ctx_.one();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (ctx_ != o.ctx_) return false;
    return ctx_.is_rationals() ? rat_ == o.rat_ : ff_ == o.ff_;
}

int FieldElem::cmp(const FieldElem& o) const {
    check_same_ctx(o);
    if (ctx_.is_rationals()) return ::cmp(rat_, o.rat_);
    long a = index(), b = o.index();
    return a < b ? -1 : (a > b ? 1 : 0);
}

long FieldElem::index() const {
    if (!ctx_.is_finite()) throw err_ctx_mismatch("index() on Q");
    long p = ctx_.characteristic(), idx = 0;
    for (size_t i = ff_.size(); i-- > 0;) idx = idx * p + ff_[i];
    return idx;
}

std::string FieldElem::to_string() const {
    if (ctx_.is_rationals()) return rat_.get_str();
    if (ctx_.kind() == FieldKind::Prime) return std::to_string(ff_[0]);
    return poly_to_string(ff_);
}

// --------------------------------------------------------------- Embedding

Embedding Embedding::make(const FieldCtx& src, const FieldCtx& dst) {
    if (src.is_rationals() && dst.is_rationals())
        return Embedding(src, dst, dst.one());
    if (src.is_rationals() != dst.is_rationals())
        throw DomainError("UnsupportedEmbedding", src.to_string() + " -> " + dst.to_string());
    if (src.characteristic() != dst.characteristic())
        throw DomainError("UnsupportedEmbedding",
                          "different characteristics " + src.to_string() + " -> " + dst.to_string());
    if (dst.degree() % src.degree() != 0)
        throw DomainError("UnsupportedEmbedding",
                          "degree " + std::to_string(src.degree()) + " does not divide " +
                              std::to_string(dst.degree()));
    if (src.kind() != FieldKind::Ext) return Embedding(src, dst, dst.one());
    // counter-least root of the source modulus in the target
    long q = dst.order();
    const auto& mod = src.modulus();
    for (long idx = 0; idx < q; ++idx) {
        FieldElem cand = dst.from_index(idx);
        FieldElem acc = dst.zero();
        FieldElem powc = dst.one();
        for (size_t i = 0; i < mod.size(); ++i) {
            if (mod[i] != 0) acc = acc + powc * dst.from_int(mod[i]);
            powc = powc * cand;
        }
        if (acc.is_zero()) return Embedding(src, dst, cand);
    }
    throw DomainError("UnsupportedEmbedding", "no root of source modulus in target");
}

FieldElem Embedding::apply(const FieldElem& e) const {
    if (e.ctx() != src_) throw err_ctx_mismatch("embedding source mismatch");
    if (src_.is_rationals()) return e;
    if (src_.kind() != FieldKind::Ext) {
        if (dst_.kind() != FieldKind::Ext) return e;
        return dst_.from_int(e.ff_[0]);
    }
    FieldElem acc = dst_.zero();
    FieldElem powg = dst_.one();
    for (long c : e.ff_) {
        if (c != 0) acc = acc + powg * dst_.from_int(c);
        powg = powg * gen_image_;
    }
    return acc;
}

std::optional<FieldElem> Embedding::restrict(const FieldElem& e) const {
    if (e.ctx() != dst_) throw err_ctx_mismatch("embedding target mismatch");
    if (src_.is_rationals()) return e;
    if (src_.kind() != FieldKind::Ext) {
        if (dst_.kind() != FieldKind::Ext) return e;
        for (size_t i = 1; i < e.ff_.size(); ++i)
            if (e.ff_[i] != 0) return std::nullopt;
        return src_.from_int(e.ff_[0]);
    }
    // solve for c_0..c_{j-1} in e = sum c_i * g^i over F_p
    int j = src_.degree(), k = dst_.degree();
    long p = dst_.characteristic();
    // columns: coefficient vectors of g^i; augmented with e
    std::vector<std::vector<long>> m(size_t(k), std::vector<long>(size_t(j) + 1, 0));
    FieldElem powg = dst_.one();
    for (int col = 0; col < j; ++col) {
        for (int row = 0; row < k; ++row) m[size_t(row)][size_t(col)] = powg.ff_[size_t(row)];
        powg = powg * gen_image_;
    }
    for (int row = 0; row < k; ++row) m[size_t(row)][size_t(j)] = e.ff_[size_t(row)];
    // Gaussian elimination mod p
    int rank = 0;
    std::vector<int> pivot_col(size_t(k), -1);
    for (int col = 0; col < j && rank < k; ++col) {
        int pr = -1;
        for (int row = rank; row < k; ++row)
            if (m[size_t(row)][size_t(col)] != 0) { pr = row; break; }
        if (pr < 0) continue;
        std::swap(m[size_t(pr)], m[size_t(rank)]);
        long piv_inv = inv_mod(m[size_t(rank)][size_t(col)], p);
        for (int c = col; c <= j; ++c)
            m[size_t(rank)][size_t(c)] = mod_pos(i128(m[size_t(rank)][size_t(c)]) * piv_inv, p);
        for (int row = 0; row < k; ++row) {
            if (row == rank) continue;
            long f = m[size_t(row)][size_t(col)];
            if (f == 0) continue;
            for (int c = col; c <= j; ++c)
                m[size_t(row)][size_t(c)] =
                    mod_pos(i128(m[size_t(row)][size_t(c)]) - i128(f) * m[size_t(rank)][size_t(c)], p);
        }
        pivot_col[size_t(rank)] = col;
        ++rank;
    }
    for (int row = rank; row < k; ++row)
        if (m[size_t(row)][size_t(j)] != 0) return std::nullopt;  // inconsistent: not in subfield
    FieldElem out;
    out.ctx_ = src_;
    out.ff_.assign(size_t(j), 0);
    for (int row = 0; row < rank; ++row) out.ff_[size_t(pivot_col[size_t(row)])] = m[size_t(row)][size_t(j)];
    return out;
}

// ----------------------------------------------------------- factorization

namespace {

mpz_class pollard_rho(const mpz_class& n, unsigned long seed) {
    gmp_randclass rnd(gmp_randinit_mt);
    rnd.seed(seed);
    while (true) {
        mpz_class x = rnd.get_z_range(n - 2) + 2, y = x, c = rnd.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
        ++seed;
    }
}

void factor_into(const mpz_class& n, std::vector<mpz_class>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.push_back(n);
        return;
    }
    mpz_class d = pollard_rho(n, 1);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<mpz_class> prime_factors(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0) throw DomainError("BadArgument", "prime_factors(0)");
    std::vector<mpz_class> out;
    for (long d : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (n % d == 0) {
            if (out.empty() || out.back() != d) out.push_back(d);
            n /= d;
        }
    }
    long d = 17;
    while (n > 1 && d <= 100000 && mpz_class(d) * d <= n) {
        while (n % d == 0) {
            if (out.empty() || out.back() != d) out.push_back(d);
            n /= d;
        }
        d += 2;
    }
    if (n > 1) {
        std::vector<mpz_class> rest;
        factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (auto& f : rest)
            if (out.empty() || out.back() != f) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace flatk
