#include "udf/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace udf::weyl {

namespace {

mpz_class factorial(int n)
{
    mpz_class r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

mpz_class falling(int n, int k)
{
    mpz_class r = 1;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

mpz_class binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    return falling(n, k) / factorial(k);
}

GaussianRational q(const mpq_class &x) { return GaussianRational(x); }

int floor_div(long a, long b)
{
    long d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return (int)d;
}

const HbarScalar &i_over_h()
{
    static const HbarScalar v(GaussianRational::i(), -1);
    return v;
}

}  // namespace

void CoeffExpr::add(int yexp, const JetPoly &p)
{
    if (p.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(yexp, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) t_.erase(it);
    }
}

JetPoly CoeffExpr::at(int yexp) const
{
    auto it = t_.find(yexp);
    return it == t_.end() ? JetPoly() : it->second;
}

CoeffExpr &CoeffExpr::operator+=(const CoeffExpr &o)
{
    for (auto &[k, p] : o.t_) add(k, p);
    return *this;
}

CoeffExpr &CoeffExpr::operator-=(const CoeffExpr &o)
{
    for (auto &[k, p] : o.t_) add(k, -p);
    return *this;
}

CoeffExpr CoeffExpr::scaled(const HbarScalar &c) const
{
    CoeffExpr r;
    if (c.is_zero()) return r;
    for (auto &[k, p] : t_) r.add(k, p.scaled(c));
    return r;
}

CoeffExpr CoeffExpr::times(const JetPoly &p, int yshift) const
{
    CoeffExpr r;
    for (auto &[k, v] : t_) r.add(k + yshift, v * p);
    return r;
}

CoeffExpr CoeffExpr::mul(const CoeffExpr &a, const CoeffExpr &b, int max_hbar)
{
    CoeffExpr r;
    for (auto &[ka, pa] : a.t_)
        for (auto &[kb, pb] : b.t_) r.add(ka + kb, JetPoly::mul(pa, pb, max_hbar));
    return r;
}

CoeffExpr CoeffExpr::truncate(int max_hbar) const
{
    CoeffExpr r;
    for (auto &[k, p] : t_) r.add(k, p.truncate(max_hbar));
    return r;
}

CoeffExpr CoeffExpr::dx() const
{
    CoeffExpr r;
    for (auto &[k, p] : t_) r.add(k + 1, jet::apply_X(p));
    return r;
}

CoeffExpr CoeffExpr::dy() const
{
    CoeffExpr r;
    for (auto &[k, p] : t_) r.add(k - 1, p.scaled(HbarScalar(k)) - jet::apply_Y(p));
    return r;
}

std::optional<int> CoeffExpr::valuation() const
{
    std::optional<int> v;
    for (auto &[k, p] : t_) {
        auto e = p.valuation();
        if (e && (!v || *e < *v)) v = e;
    }
    return v;
}

std::string CoeffExpr::str() const
{
    if (t_.empty()) return "0";
    std::string s;
    for (auto &[k, p] : t_) {
        if (!s.empty()) s += " + ";
        if (k != 0) s += "y^" + std::to_string(k) + "*";
        s += "[" + p.str() + "]";
    }
    return s;
}

std::string CoeffExpr::latex() const
{
    if (t_.empty()) return "0";
    std::string s;
    for (auto &[k, p] : t_) {
        if (!s.empty()) s += "+";
        if (k != 0) s += "y^{" + std::to_string(k) + "}";
        s += "\\left(" + p.latex() + "\\right)";
    }
    return s;
}

nlohmann::json CoeffExpr::to_json() const
{
    auto arr = nlohmann::json::array();
    for (auto &[k, p] : t_) arr.push_back({{"y", k}, {"poly", p.to_json()}});
    return arr;
}

int Cut::hbar_limit(int m, int n) const
{
    long lim = INT_MAX;
    if (max_deg != INT_MAX) lim = std::min<long>(lim, floor_div((long)max_deg - m - n, 2));
    if (max_order != INT_MAX) lim = std::min<long>(lim, (long)max_order - m);
    return (int)lim;
}

WeylSection WeylSection::constant(const CoeffExpr &c) { return monomial(0, 0, c); }

WeylSection WeylSection::monomial(int m, int n, const CoeffExpr &c)
{
    WeylSection s;
    s.add(m, n, c);
    return s;
}

void WeylSection::add(int m, int n, const CoeffExpr &c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace({m, n}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

CoeffExpr WeylSection::coeff(int m, int n) const
{
    auto it = t_.find({m, n});
    return it == t_.end() ? CoeffExpr() : it->second;
}

WeylSection &WeylSection::operator+=(const WeylSection &o)
{
    for (auto &[i, c] : o.t_) add(i.first, i.second, c);
    return *this;
}

WeylSection &WeylSection::operator-=(const WeylSection &o)
{
    for (auto &[i, c] : o.t_) add(i.first, i.second, c.scaled(HbarScalar(-1)));
    return *this;
}

WeylSection WeylSection::scaled(const HbarScalar &c) const
{
    WeylSection r;
    for (auto &[i, v] : t_) r.add(i.first, i.second, v.scaled(c));
    return r;
}

WeylSection WeylSection::times(const JetPoly &p, int yshift) const
{
    WeylSection r;
    for (auto &[i, v] : t_) r.add(i.first, i.second, v.times(p, yshift));
    return r;
}

WeylSection WeylSection::pruned(const Cut &c) const
{
    WeylSection r;
    for (auto &[i, v] : t_) {
        if (c.drops(i.first, i.second)) continue;
        int lim = c.hbar_limit(i.first, i.second);
        r.add(i.first, i.second, lim == INT_MAX ? v : v.truncate(lim));
    }
    return r;
}

WeylSection WeylSection::triangle(int total) const
{
    WeylSection r;
    for (auto &[i, v] : t_)
        if (i.first + i.second <= total) r.add(i.first, i.second, v);
    return r;
}

WeylSection WeylSection::dx() const
{
    WeylSection r;
    for (auto &[i, v] : t_) r.add(i.first, i.second, v.dx());
    return r;
}

WeylSection WeylSection::dy() const
{
    WeylSection r;
    for (auto &[i, v] : t_) r.add(i.first, i.second, v.dy());
    return r;
}

WeylSection WeylSection::du() const
{
    WeylSection r;
    for (auto &[i, v] : t_)
        if (i.first > 0) r.add(i.first - 1, i.second, v.scaled(HbarScalar(i.first)));
    return r;
}

WeylSection WeylSection::dv() const
{
    WeylSection r;
    for (auto &[i, v] : t_)
        if (i.second > 0) r.add(i.first, i.second - 1, v.scaled(HbarScalar(i.second)));
    return r;
}

WeylSection WeylSection::mul_u() const
{
    WeylSection r;
    for (auto &[i, v] : t_) r.add(i.first + 1, i.second, v);
    return r;
}

WeylSection WeylSection::mul_v() const
{
    WeylSection r;
    for (auto &[i, v] : t_) r.add(i.first, i.second + 1, v);
    return r;
}

std::string WeylSection::table(int m_max, int n_max, bool latex) const
{
    std::string s;
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= n_max; ++n) {
            CoeffExpr c = coeff(m, n);
            if (latex)
                s += "a_{" + std::to_string(m) + "," + std::to_string(n) + "} &= " + c.latex() + "\\\\\n";
            else
                s += "(" + std::to_string(m) + "," + std::to_string(n) + ")  " + c.str() + "\n";
        }
    return s;
}

nlohmann::json WeylSection::to_json() const
{
    auto arr = nlohmann::json::array();
    for (auto &[i, c] : t_) arr.push_back({{"m", i.first}, {"n", i.second}, {"coeff", c.to_json()}});
    return arr;
}

FormSection &FormSection::operator+=(const FormSection &o)
{
    s += o.s;
    dx += o.dx;
    dy += o.dy;
    dxdy += o.dxdy;
    return *this;
}

FormSection &FormSection::operator-=(const FormSection &o)
{
    s -= o.s;
    dx -= o.dx;
    dy -= o.dy;
    dxdy -= o.dxdy;
    return *this;
}

FormSection FormSection::scaled(const HbarScalar &c) const
{
    return FormSection{s.scaled(c), dx.scaled(c), dy.scaled(c), dxdy.scaled(c)};
}

FormSection FormSection::pruned(const Cut &c) const
{
    return FormSection{s.pruned(c), dx.pruned(c), dy.pruned(c), dxdy.pruned(c)};
}

WeylSection moyal(const WeylSection &a, const WeylSection &b, const Params &p, const Cut &cut)
{
    // (sigma i / 2)^k / k!
    std::vector<GaussianRational> pref;
    auto base = GaussianRational(mpq_class(p.sigma, 2)) * GaussianRational::i();
    WeylSection r;
    for (auto &[ia, ca] : a.terms())
        for (auto &[ib, cb] : b.terms()) {
            auto [am, an] = ia;
            auto [bm, bn] = ib;
            int kmax = std::min(am + an, bm + bn);
            for (int k = 0; k <= kmax; ++k) {
                while ((int)pref.size() <= k) {
                    int kk = (int)pref.size();
                    GaussianRational v(1);
                    for (int i = 0; i < kk; ++i) v *= base;
                    pref.push_back(v * q(mpq_class(1, factorial(kk))));
                }
                for (int j = 0; j <= k; ++j) {
                    if (am < j || an < k - j || bn < j || bm < k - j) continue;
                    int rm = am - j + bm - (k - j), rn = an - (k - j) + bn - j;
                    if (cut.drops(rm, rn)) continue;
                    int lim = cut.hbar_limit(rm, rn);
                    mpz_class num = binom(k, j) * falling(am, j) * falling(an, k - j) * falling(bn, j) *
                                    falling(bm, k - j);
                    if ((k - j) % 2) num = -num;
                    GaussianRational c = pref[k] * q(mpq_class(num));
                    int room = lim == INT_MAX ? (1 << 29) : lim - k;
                    CoeffExpr prod = CoeffExpr::mul(ca, cb, room);
                    r.add(rm, rn, prod.scaled(HbarScalar(c, k)));
                }
            }
        }
    return r;
}

CoeffExpr pair_at_origin(const WeylSection &a, const WeylSection &b, const Params &p, int max_hbar)
{
    auto base = GaussianRational(mpq_class(p.sigma, 2)) * GaussianRational::i();
    CoeffExpr r;
    for (auto &[ia, ca] : a.terms()) {
        auto [m, n] = ia;
        auto it = b.terms().find({n, m});
        if (it == b.terms().end()) continue;
        int k = m + n;
        GaussianRational c(1);
        for (int i = 0; i < k; ++i) c *= base;
        mpz_class w = factorial(m) * factorial(n);
        if (n % 2) w = -w;
        c *= q(mpq_class(w));
        r += CoeffExpr::mul(ca, it->second, max_hbar - k).scaled(HbarScalar(c, k));
    }
    return r;
}

CoeffExpr restrict_origin(const WeylSection &a) { return a.coeff(0, 0); }

WeylSection moyal_inverse(const WeylSection &a, const Params &p, const Cut &cut)
{
    WeylSection one = WeylSection::constant(CoeffExpr(JetPoly(HbarScalar(1)), 0));
    WeylSection e = (a - one).pruned(cut);
    WeylSection w = one;
    for (int it = 0; it < 256; ++it) {
        WeylSection next = (one - moyal(e, w, p, cut)).pruned(cut);
        if (next == w) return w;
        w = std::move(next);
    }
    throw std::runtime_error("moyal inverse did not converge");
}

JetPoly delta_poly(const jet::GroupWord &w, const Params &p)
{
    return jet::jet_of_product(w, 2, jet::JetVariant::Delta2Prime).scaled(HbarScalar(p.c_delta));
}

FormSection delta_form(const JetPoly &poly)
{
    FormSection f;
    f.dx = WeylSection::monomial(2, 0, CoeffExpr(poly, 3));
    return f;
}

static WeylSection commutator(const WeylSection &a, const WeylSection &b, const Params &p)
{
    return moyal(a, b, p) - moyal(b, a, p);
}

static const WeylSection &r_x()
{
    static const WeylSection r = WeylSection::monomial(0, 2, CoeffExpr(JetPoly(HbarScalar::frac(1, 4)), -1));
    return r;
}

static const WeylSection &r_y()
{
    static const WeylSection r = WeylSection::monomial(1, 1, CoeffExpr(JetPoly(HbarScalar::frac(1, 2)), -1));
    return r;
}

FormSection connection(const WeylSection &a, const Params &p, const Cut &cut)
{
    FormSection f;
    f.dx = a.dx() - a.du() + commutator(r_x(), a, p).scaled(i_over_h());
    f.dy = a.dy() - a.dv() + commutator(r_y(), a, p).scaled(i_over_h());
    return f.pruned(cut);
}

FormSection connection1(const FormSection &b, const Params &p, const Cut &cut)
{
    FormSection f;
    f.dxdy = connection(b.dy, p).dx - connection(b.dx, p).dy;
    return f.pruned(cut);
}

FormSection twisted_connection(const WeylSection &a, const JetPoly &cl, const JetPoly &cr, const Params &p,
                               const Cut &cut)
{
    FormSection f = connection(a, p);
    WeylSection left = WeylSection::monomial(2, 0, CoeffExpr(cl, 3));
    WeylSection right = WeylSection::monomial(2, 0, CoeffExpr(cr, 3));
    WeylSection t;
    if (!cl.is_zero()) t += moyal(left, a, p);
    if (!cr.is_zero()) t -= moyal(a, right, p);
    f.dx += t.scaled(i_over_h());
    return f.pruned(cut);
}

FormSection fedosov_delta(const FormSection &a)
{
    FormSection f;
    f.dx = a.s.du();
    f.dy = a.s.dv();
    f.dxdy = a.dy.du() - a.dx.dv();
    return f;
}

FormSection fedosov_delta_inv(const FormSection &a)
{
    FormSection f;
    auto lift = [](const WeylSection &src, int q, bool by_u, int sign, WeylSection &dst) {
        for (auto &[i, c] : src.terms()) {
            int m = i.first, n = i.second;
            CoeffExpr v = c.scaled(HbarScalar(GaussianRational(mpq_class(sign, m + n + q))));
            if (by_u)
                dst.add(m + 1, n, v);
            else
                dst.add(m, n + 1, v);
        }
    };
    lift(a.dx, 1, true, 1, f.s);
    lift(a.dy, 1, false, 1, f.s);
    lift(a.dxdy, 2, true, 1, f.dy);
    lift(a.dxdy, 2, false, -1, f.dx);
    return f;
}

Kind parse_kind(const std::string &s)
{
    if (s == "hat_f") return Kind::HatF;
    if (s == "alpha_hat_g") return Kind::AlphaHatG;
    if (s == "u_alpha_inv") return Kind::UAlphaInv;
    if (s == "u_alpha_beta") return Kind::UAlphaBeta;
    if (s == "v_alphabeta") return Kind::VAlphaBeta;
    throw std::invalid_argument("unknown kind: " + s);
}

std::string kind_name(Kind k)
{
    switch (k) {
    case Kind::HatF: return "hat_f";
    case Kind::AlphaHatG: return "alpha_hat_g";
    case Kind::UAlphaInv: return "u_alpha_inv";
    case Kind::UAlphaBeta: return "u_alpha_beta";
    case Kind::VAlphaBeta: return "v_alphabeta";
    }
    return "?";
}

SectionSpec family_spec_words(Kind k, const jet::GroupWord &w1, const jet::GroupWord &w2, const JetPoly &fn,
                              const Params &p)
{
    JetPoly one(HbarScalar(1));
    switch (k) {
    case Kind::HatF: return {fn, {}, {}};
    case Kind::AlphaHatG: return {jet::prefix(w1, fn), delta_poly(w1, p), delta_poly(w1, p)};
    case Kind::UAlphaInv: return {one, {}, delta_poly(w1, p)};
    case Kind::UAlphaBeta: return {one, delta_poly(w1, p), delta_poly(jet::concat(w1, w2), p)};
    case Kind::VAlphaBeta: return {one, delta_poly(jet::concat(w1, w2), p), {}};
    }
    throw std::invalid_argument("unknown kind");
}

SectionSpec family_spec(Kind k, const Params &p, const std::string &letter)
{
    std::string name = letter.empty() ? (k == Kind::HatF ? "f" : "g") : letter;
    return family_spec_words(k, {1}, {2}, JetPoly::from_letter(jet::function_letter(name)), p);
}

WeylSection solve_recursion(const SectionSpec &s, const Params &p, int M, int Nmax)
{
    int NN = std::max(Nmax, 2);
    std::vector<std::vector<CoeffExpr>> a(M + 1, std::vector<CoeffExpr>(NN + 1));
    JetPoly e = s.cl - s.cr, sum = s.cl + s.cr;
    HbarScalar sig(p.sigma);
    auto column = [&](int m) {
        for (int n = 0; n < NN; ++n) {
            CoeffExpr c = a[m][n].dy();
            c -= CoeffExpr(a[m][n]).scaled(HbarScalar(GaussianRational(mpq_class(p.sigma * (n - m), 2))))
                     .times(JetPoly(HbarScalar(1)), -1);
            a[m][n + 1] = c.scaled(HbarScalar(GaussianRational(mpq_class(1, n + 1))));
        }
    };
    a[0][0] = CoeffExpr(s.seed, 0);
    column(0);
    for (int m = 0; m < M; ++m) {
        CoeffExpr c = a[m][0].dx();
        if (m >= 2 && !e.is_zero()) c += a[m - 2][0].times(e, 3).scaled(i_over_h());
        if (m >= 1 && !sum.is_zero()) c -= a[m - 1][1].times(sum, 3).scaled(sig);
        if (!e.is_zero())
            c -= a[m][2].times(e, 3).scaled(HbarScalar(GaussianRational(0, mpq_class(1, 2)), 1));
        a[m + 1][0] = c.scaled(HbarScalar(GaussianRational(mpq_class(1, m + 1))));
        column(m + 1);
    }
    WeylSection r;
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= Nmax; ++n) r.add(m, n, a[m][n]);
    return r;
}

static JetPoly y_shift(const JetPoly &v, const mpq_class &c) { return jet::apply_Y_shift(v, q(c)); }

WeylSection build_closed(const SectionSpec &s, const Params &p, int M, int Nmax)
{
    if (p.sigma != -1) throw std::invalid_argument("closed forms are stated for sigma = -1");
    JetPoly e = s.cl - s.cr, sum = s.cl + s.cr;
    HbarScalar quarter_ih(GaussianRational(0, mpq_class(1, 4)), 1);
    std::vector<JetPoly> A(M + 1);
    A[0] = s.seed;
    for (int m = 0; m < M; ++m) {
        JetPoly next = jet::apply_X(A[m]);
        if (!e.is_zero()) {
            JetPoly t = y_shift(y_shift(A[m], mpq_class(m, 2)), mpq_class(m - 1, 2));
            next -= (e * t).scaled(quarter_ih);
        }
        if (m >= 1 && !sum.is_zero())
            next -= (sum * y_shift(A[m - 1], mpq_class(m - 1, 2))).scaled(HbarScalar(m));
        if (m >= 2 && !e.is_zero()) next += (e * A[m - 2]).scaled(i_over_h().scaled(GaussianRational(m * (m - 1))));
        A[m + 1] = next;
    }
    WeylSection r;
    for (int m = 0; m <= M; ++m) {
        JetPoly v = A[m];
        for (int n = 0; n <= Nmax; ++n) {
            if (n > 0) v = y_shift(v, mpq_class(m - (n - 1), 2));
            mpz_class d = factorial(m) * factorial(n);
            GaussianRational c(mpq_class(n % 2 ? -1 : 1, d));
            r.add(m, n, CoeffExpr(v.scaled(HbarScalar(c)), m - n));
        }
    }
    return r;
}

WeylSection build_printed(Kind k, const Params &p, int M, int Nmax)
{
    using jet::JetVariant;
    JetPoly f = JetPoly::from_letter(jet::function_letter("f"));
    JetPoly ag = jet::prefix({1}, JetPoly::from_letter(jet::function_letter("g")));
    JetPoly D = jet::jet_of_product({1}, 2, JetVariant::Delta2Prime);
    JetPoly B = jet::prefix({1}, jet::jet_of_product({2}, 2, JetVariant::Delta2Prime));
    JetPoly E = jet::jet_of_product({1, 2}, 2, JetVariant::Delta2Prime);
    HbarScalar quarter_ih(GaussianRational(0, mpq_class(1, 4)), 1);
    (void)p;
    WeylSection r;
    if (k == Kind::HatF || k == Kind::AlphaHatG) {
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n <= Nmax; ++n) {
                JetPoly psi = k == Kind::HatF ? f : ag;
                for (int j = n - 1; j >= 0; --j) psi = y_shift(psi, mpq_class(-(m + j), 2));
                std::vector<JetPoly> A(m + 1);
                A[0] = psi;
                for (int i = 0; i < m; ++i) {
                    A[i + 1] = jet::apply_X(A[i]);
                    if (k == Kind::AlphaHatG && i >= 1)
                        A[i + 1] -= (D * y_shift(A[i - 1], mpq_class(i - 1, 2))).scaled(HbarScalar(i));
                }
                mpz_class d = factorial(m);
                if (k == Kind::AlphaHatG) d *= factorial(n);
                GaussianRational c(mpq_class(n % 2 ? -1 : 1, d));
                r.add(m, n, CoeffExpr(A[m].scaled(HbarScalar(c)), m - n));
            }
        return r;
    }
    JetPoly P, Q;
    if (k == Kind::UAlphaInv) {
        P = D;
        Q = D;
    } else if (k == Kind::UAlphaBeta) {
        P = B;
        Q = D.scaled(HbarScalar(2)) + B;
    } else {
        P = -E;
        Q = -E;
    }
    std::vector<JetPoly> A(M + 1);
    A[0] = JetPoly(HbarScalar(1));
    for (int m = 0; m < M; ++m) {
        JetPoly next = jet::apply_X(A[m]);
        next += (P * y_shift(y_shift(A[m], mpq_class(m, 2)), mpq_class(m - 1, 2))).scaled(quarter_ih);
        if (m >= 1) next -= Q * y_shift(A[m - 1], mpq_class(m - 1, 2));
        if (m >= 2) next -= (P * A[m - 2]).scaled(i_over_h());
        A[m + 1] = next;
    }
    for (int m = 0; m <= M; ++m) {
        JetPoly v = A[m];
        for (int n = 0; n <= Nmax; ++n) {
            if (n > 0) v = y_shift(v, mpq_class(m - (n - 1), 2));
            mpz_class d = factorial(m) * factorial(n);
            r.add(m, n, CoeffExpr(v.scaled(HbarScalar(GaussianRational(mpq_class(n % 2 ? -1 : 1, d)))), m - n));
        }
    }
    return r;
}

WeylSection fedosov_iterate(const SectionSpec &s, const Params &p, const Cut &cut)
{
    if (cut.max_deg == INT_MAX || cut.max_m == INT_MAX)
        throw std::invalid_argument("fedosov_iterate needs finite max_m and max_deg");
    WeylSection seed = WeylSection::constant(CoeffExpr(s.seed, 0));
    WeylSection a = seed.pruned(cut);
    for (int it = 0; it < cut.max_deg + 4; ++it) {
        FormSection rhs = twisted_connection(a, s.cl, s.cr, p);
        rhs += fedosov_delta(FormSection{a, {}, {}, {}});
        WeylSection next = (seed + fedosov_delta_inv(rhs).s).pruned(cut);
        if (next == a) return a;
        a = std::move(next);
    }
    throw std::runtime_error("fedosov iteration did not converge");
}

}  // namespace udf::weyl
