#include "poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace flatk {

Poly::Poly(FieldCtx ctx, std::vector<FieldElem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.ctx() != ctx_) throw err_ctx_mismatch("poly coefficient ctx");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::x_power(const FieldCtx& ctx, int n) {
    std::vector<FieldElem> c(size_t(n) + 1, ctx.zero());
    c.back() = ctx.one();
    return Poly(ctx, std::move(c));
}

Poly Poly::constant(const FieldElem& c) { return Poly(c.ctx(), {c}); }

FieldElem Poly::coeff(int i) const {
    if (i < 0 || i >= int(c_.size())) return ctx_.zero();
    return c_[size_t(i)];
}

Poly Poly::operator+(const Poly& o) const {
    if (ctx_ != o.ctx_) throw err_ctx_mismatch("poly ctx");
    std::vector<FieldElem> c(std::max(c_.size(), o.c_.size()), ctx_.zero());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
    return Poly(ctx_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
    if (ctx_ != o.ctx_) throw err_ctx_mismatch("poly ctx");
    std::vector<FieldElem> c(std::max(c_.size(), o.c_.size()), ctx_.zero());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] - o.c_[i];
    return Poly(ctx_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (ctx_ != o.ctx_) throw err_ctx_mismatch("poly ctx");
    if (is_zero() || o.is_zero()) return Poly(ctx_);
    std::vector<FieldElem> c(c_.size() + o.c_.size() - 1, ctx_.zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
    return Poly(ctx_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw err_singular("polynomial division by zero");
    Poly q(ctx_), r = *this;
    FieldElem lead_inv = d.c_.back().inv();
    std::vector<FieldElem> qc;
    if (r.degree() >= d.degree()) qc.assign(size_t(r.degree() - d.degree()) + 1, ctx_.zero());
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        FieldElem f = r.c_.back() * lead_inv;
        qc[size_t(shift)] = f;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[size_t(shift + i)] = r.c_[size_t(shift + i)] - f * d.c_[size_t(i)];
        r.trim();
    }
    return {Poly(ctx_, std::move(qc)), r};
}

Poly Poly::operator/(const Poly& d) const { return divmod(d).first; }
Poly Poly::operator%(const Poly& d) const { return divmod(d).second; }

bool Poly::operator==(const Poly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(ctx_);
    std::vector<FieldElem> c(c_.size() - 1, ctx_.zero());
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * ctx_.from_int(long(i));
    return Poly(ctx_, std::move(c));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    if (c_.back().is_one()) return *this;
    FieldElem inv = c_.back().inv();
    std::vector<FieldElem> c = c_;
    for (auto& x : c) x = x * inv;
    return Poly(ctx_, std::move(c));
}

FieldElem Poly::eval(const FieldElem& v) const {
    FieldElem acc = ctx_.zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
}

Matrix Poly::eval(const Matrix& m) const {
    Matrix acc(m.ctx(), m.rows(), m.cols());
    for (size_t i = c_.size(); i-- > 0;) acc = acc * m + Matrix::scalar(m.ctx(), m.rows(), c_[i]);
    return acc;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[size_t(i)].is_zero()) continue;
        if (!first) os << " + ";
        if (i == 0 || !c_[size_t(i)].is_one()) os << "(" << c_[size_t(i)].to_string() << ")";
        if (i >= 1) os << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx());
    Poly g = poly_gcd(a, b);
    return ((a * b) / g).monic();
}

namespace {

// inverse Frobenius on coefficients; valid because our fields are perfect
FieldElem pth_root_coeff(const FieldElem& a) {
    const FieldCtx& ctx = a.ctx();
    long p = ctx.characteristic();
    int k = ctx.degree();
    if (k == 1) return a;  // a^p = a in F_p
    long e = 1;
    for (int i = 0; i < k - 1; ++i) e *= p;
    return a.pow(e);
}

Poly pth_root_poly(const Poly& f) {
    long p = f.ctx().characteristic();
    std::vector<FieldElem> c;
    for (int i = 0; i <= f.degree(); i += int(p)) c.push_back(pth_root_coeff(f.coeff(i)));
    return Poly(f.ctx(), std::move(c));
}

}  // namespace

Poly radical(const Poly& f_in) {
    Poly f = f_in.monic();
    if (f.degree() <= 1) return f;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        // char p and f = g(x^p)
        return radical(pth_root_poly(f));
    }
    Poly g = poly_gcd(f, fp);
    if (g.degree() == 0) return f;
    Poly w = f / g;  // distinct factors with multiplicity prime to char
    return poly_lcm(w, radical(g));
}

Poly char_poly(const Matrix& m_in) {
    if (!m_in.is_square()) throw err_shape("char_poly of non-square matrix");
    const FieldCtx& ctx = m_in.ctx();
    int n = m_in.rows();
    if (n == 0) return Poly(ctx, {ctx.one()});
    Matrix h = m_in;
    // Hessenberg reduction by similarity with pivoting; exact over any field
    for (int col = 0; col + 2 < n; ++col) {
        int pr = -1;
        for (int row = col + 1; row < n; ++row)
            if (!h.at(row, col).is_zero()) { pr = row; break; }
        if (pr < 0) continue;
        if (pr != col + 1) {
            for (int j = 0; j < n; ++j) std::swap(h.at(pr, j), h.at(col + 1, j));
            for (int i = 0; i < n; ++i) std::swap(h.at(i, pr), h.at(i, col + 1));
        }
        FieldElem piv_inv = h.at(col + 1, col).inv();
        for (int row = col + 2; row < n; ++row) {
            FieldElem f = h.at(row, col);
            if (f.is_zero()) continue;
            f = f * piv_inv;
            for (int j = 0; j < n; ++j) h.at(row, j) = h.at(row, j) - f * h.at(col + 1, j);
            for (int i = 0; i < n; ++i) h.at(i, col + 1) = h.at(i, col + 1) + f * h.at(i, row);
        }
    }
    // recurrence on leading principal minors of xI - H
    std::vector<Poly> p(size_t(n) + 1, Poly(ctx));
    p[0] = Poly(ctx, {ctx.one()});
    Poly x = Poly::x_power(ctx, 1);
    for (int mdim = 1; mdim <= n; ++mdim) {
        Poly t = (x - Poly::constant(h.at(mdim - 1, mdim - 1))) * p[size_t(mdim) - 1];
        FieldElem sub = ctx.one();
        for (int i = mdim - 1; i >= 1; --i) {
            sub = sub * h.at(i, i - 1);
            Poly corr = Poly::constant(h.at(i - 1, mdim - 1) * sub) * p[size_t(i) - 1];
            t = t - corr;
        }
        p[size_t(mdim)] = std::move(t);
    }
    return p[size_t(n)];
}

Poly min_poly(const Matrix& m) {
    if (!m.is_square()) throw err_shape("min_poly of non-square matrix");
    const FieldCtx& ctx = m.ctx();
    int n = m.rows();
    Poly acc(ctx, {ctx.one()});
    for (int i = 0; i < n && acc.degree() < n; ++i) {
        // minimal annihilator of e_i under m via Krylov dependence
        std::vector<std::vector<FieldElem>> krylov;
        std::vector<FieldElem> v(size_t(n), ctx.zero());
        v[size_t(i)] = ctx.one();
        while (true) {
            // does v depend on krylov so far?
            Matrix sys(ctx, n, int(krylov.size()));
            for (int r = 0; r < n; ++r)
                for (size_t c = 0; c < krylov.size(); ++c) sys.at(r, int(c)) = krylov[c][size_t(r)];
            std::optional<std::vector<FieldElem>> sol;
            if (!krylov.empty()) sol = sys.solve(v);
            if (sol) {
                std::vector<FieldElem> pc(krylov.size() + 1, ctx.zero());
                for (size_t c = 0; c < krylov.size(); ++c) pc[c] = -(*sol)[c];
                pc.back() = ctx.one();
                acc = poly_lcm(acc, Poly(ctx, std::move(pc)));
                break;
            }
            krylov.push_back(v);
            v = m.apply(v);
        }
    }
    return acc;
}

Poly cyclotomic(const FieldCtx& q_ctx, int n) {
    if (!q_ctx.is_rationals()) throw err_ctx_mismatch("cyclotomic over Q only");
    static thread_local std::map<int, Poly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // x^n - 1 divided by all lower cyclotomics
    Poly num = Poly::x_power(q_ctx, n) - Poly(q_ctx, {q_ctx.one()});
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = num / cyclotomic(q_ctx, d);
    cache.emplace(n, num);
    return num;
}

namespace {

void all_divisors(const mpz_class& n_in, std::vector<mpz_class>& out) {
    mpz_class n = abs(n_in);
    std::vector<std::pair<mpz_class, int>> fac;
    for (const auto& p : prime_factors(n)) {
        int e = 0;
        mpz_class t = n;
        while (t % p == 0) {
            t /= p;
            ++e;
        }
        fac.emplace_back(p, e);
    }
    out = {mpz_class(1)};
    for (auto& [p, e] : fac) {
        size_t base = out.size();
        if (base * size_t(e + 1) > 100000)
            throw DomainError("Unsupported", "too many divisors in rational root search");
        mpz_class pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
        }
    }
}

}  // namespace

std::vector<FieldElem> roots_in_ctx(const Poly& f_in) {
    Poly f = f_in.monic();
    const FieldCtx& ctx = f.ctx();
    std::vector<FieldElem> roots;
    if (f.degree() <= 0) return roots;
    if (ctx.is_finite()) {
        for (long i = 0; i < ctx.order(); ++i) {
            FieldElem c = ctx.from_index(i);
            if (f.eval(c).is_zero()) roots.push_back(c);
        }
        return roots;
    }
    // rational root theorem after clearing denominators
    mpz_class den_lcm = 1;
    for (int i = 0; i <= f.degree(); ++i) {
        mpz_class d = f.coeff(i).rat().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    std::vector<mpz_class> ic(size_t(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) {
        mpq_class scaled = f.coeff(i).rat() * den_lcm;
        scaled.canonicalize();
        ic[size_t(i)] = scaled.get_num();
    }
    // strip powers of x
    int v = 0;
    while (v <= f.degree() && ic[size_t(v)] == 0) ++v;
    if (v > 0) roots.push_back(ctx.zero());
    if (v > f.degree()) return roots;
    std::vector<mpz_class> ps, qs;
    all_divisors(ic[size_t(v)], ps);
    all_divisors(ic.back(), qs);
    for (const auto& q : qs)
        for (const auto& p : ps) {
            for (int sign : {1, -1}) {
                mpq_class cand(sign * p, q);
                cand.canonicalize();
                FieldElem fe = ctx.from_mpq(cand);
                if (f.eval(fe).is_zero()) {
                    bool seen = false;
                    for (const auto& r : roots)
                        if (r == fe) { seen = true; break; }
                    if (!seen) roots.push_back(fe);
                }
            }
        }
    return roots;
}

std::vector<FieldElem> scalar_dth_roots(const FieldElem& a, long d) {
    const FieldCtx& ctx = a.ctx();
    std::vector<FieldElem> out;
    if (d <= 0) throw DomainError("BadArgument", "root degree must be positive");
    if (ctx.is_finite()) {
        for (long i = 0; i < ctx.order(); ++i) {
            FieldElem c = ctx.from_index(i);
            if (c.pow(d) == a) out.push_back(c);
        }
        return out;
    }
    const mpq_class& q = a.rat();
    mpz_class num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg && d % 2 == 0) return out;
    mpz_class anum = abs(num), rn, rd;
    if (mpz_root(rn.get_mpz_t(), anum.get_mpz_t(), (unsigned long)d) == 0) return out;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), (unsigned long)d) == 0) return out;
    mpq_class r(neg ? -rn : rn, rd);
    r.canonicalize();
    out.push_back(ctx.from_mpq(r));
    if (d % 2 == 0 && !a.is_zero()) out.push_back(ctx.from_mpq(mpq_class(-r)));
    return out;
}

}  // namespace flatk
