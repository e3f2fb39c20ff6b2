#include "udf/eholzer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

namespace udf::eholzer {

Q rising(const Q &X, int n)
{
    Q r = 1;
    for (int i = 0; i < n; ++i) r *= X + i;
    return r;
}

static Q factorial(int n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), (unsigned long)n);
    return Q(f);
}

Q binom(const Q &X, int n)
{
    if (n < 0) return 0;
    if (X.get_den() == 1) {
        mpz_class r;
        mpz_bin_ui(r.get_mpz_t(), X.get_num().get_mpz_t(), (unsigned long)n);
        return Q(r);
    }
    Q r = 1;
    for (int i = 0; i < n; ++i) r *= X - i;
    return r / factorial(n);
}

Q pochhammer_binom(const Q &X, int n, Which which)
{
    if (n < 0) throw std::invalid_argument("negative index");
    return which == Which::Rising ? rising(X, n) : binom(X, n);
}

Q parse_rational(const std::string &s)
{
    Q q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    q.canonicalize();
    return q;
}

std::string rational_str(const Q &q)
{
    Q c = q;
    c.canonicalize();
    return c.get_str();
}

static Q frac(long a, long b)
{
    Q q(a, b);
    q.canonicalize();
    return q;
}

static Q A(int n, const Q &a, const Q &b) { return rising(a, n) * rising(b, n) / factorial(n); }

Sides assoc_sides(int n, int p, const Q &k2, const Q &l2, const Q &m2)
{
    Sides s;
    auto nonzero = [&](const Q &d) {
        if (d == 0) s.excluded = true;
        return d != 0;
    };
    for (int r = 0; r <= n - p; ++r) {
        Q d1 = rising(k2, r), d2 = rising(k2 + l2 + 2 * r, n - p - r), d3 = rising(m2, p);
        if (!nonzero(d1) || !nonzero(d2) || !nonzero(d3)) continue;
        s.lhs += binom(n - r, p) * A(r, k2, l2) / d1 * A(n - r, k2 + l2 + 2 * r, m2) / (d2 * d3);
    }
    for (int t = 0; t <= p; ++t) {
        Q d1 = rising(m2, t), d2 = rising(l2 + m2 + 2 * t, p - t), d3 = rising(k2, n - p);
        if (!nonzero(d1) || !nonzero(d2) || !nonzero(d3)) continue;
        s.rhs += binom(n - t, n - p) * A(t, l2, m2) / d1 * A(n - t, k2, l2 + m2 + 2 * t) / (d2 * d3);
    }
    return s;
}

static std::string point_str(const std::vector<Q> &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rational_str(v[i]);
    return s + ")";
}

VerificationReport assoc_identity_check(int n, const Q &k2, const Q &l2, const Q &m2)
{
    VerificationReport rep;
    rep.suite = "assoc";
    std::string id = "n=" + std::to_string(n) + " (2k,2l,2m)=" + point_str({k2, l2, m2});
    bool ok = true;
    std::string lhs, rhs;
    for (int p = 0; p <= n; ++p) {
        Sides s = assoc_sides(n, p, k2, l2, m2);
        if (s.excluded) {
            rep.exclude(id, "vanishing denominator at p=" + std::to_string(p));
            return rep;
        }
        if (s.lhs != s.rhs) ok = false;
        lhs += rational_str(s.lhs) + ";";
        rhs += rational_str(s.rhs) + ";";
    }
    rep.add(id, ok, digest(lhs), digest(rhs));
    return rep;
}

Q zagier_P(int n, const Q &y, const Q &z, const Q &a)
{
    Q sum = 0;
    for (int r = 0; r <= n; ++r) {
        Q f = factorial(r) * factorial(n - r);
        sum += binom(y, r) * binom(y - a, r) * binom(2 * y - r, n - r) * binom(z, n - r) * binom(z + a, n - r) *
               binom(2 * z - n + r, r) * f * f;
    }
    Q c = 1;
    for (int i = 0; i < n; ++i) c *= -4;
    return c * sum;
}

Q zagier_Q(int n, const Q &y, const Q &z, const Q &a)
{
    Q sum = 0, half(1, 2);
    Q x = n - y - z - 1;
    for (int j = 0; 2 * j <= n; ++j) {
        Q fj = factorial(j), fn = factorial(n - 2 * j);
        Q w = fn * fn * fj * fj * fj * fj * fj * fj / factorial(2 * j);
        for (int i = 0; i < 6 * j; ++i) w *= 2;
        sum += w * binom(-half, j) * binom(a - half, j) * binom(-a - half, j) * binom(x, j) *
               binom(2 * x - 2 * j, n - 2 * j) * binom(y, j) * binom(2 * y - 2 * j, n - 2 * j) * binom(z, j) *
               binom(2 * z - 2 * j, n - 2 * j);
    }
    return sum;
}

Sides zagier_raw(int n, const Q &y, const Q &z, const Q &a)
{
    Sides s;
    Q half(1, 2), x = n - y - z - 1;
    Q d = binom(2 * x, n);
    if (d == 0) s.excluded = true;
    for (int r = 0; r <= n && !s.excluded; ++r) {
        Q dy = binom(2 * y, r), dz = binom(2 * z, n - r);
        if (dy == 0 || dz == 0) {
            s.excluded = true;
            break;
        }
        s.lhs += binom(y, r) * binom(y - a, r) / dy * binom(z, n - r) * binom(z + a, n - r) / dz;
    }
    if (s.excluded) return s;
    Q c = 1;
    for (int i = 0; i < n; ++i) c *= -4;
    s.lhs *= c / d;
    for (int j = 0; 2 * j <= n; ++j) {
        Q den = binom(x - half, j) * binom(y - half, j) * binom(z - half, j);
        if (den == 0) {
            s.excluded = true;
            return s;
        }
        s.rhs += binom(n, 2 * j) * binom(-half, j) * binom(a - half, j) * binom(-a - half, j) / den;
    }
    return s;
}

Sides half_product_form(int n, const Q &y, const Q &z)
{
    Sides s;
    Q fn = factorial(n);
    for (int r = 0; r <= n; ++r)
        s.lhs += binom(2 * y, 2 * r) * binom(2 * y - r, n - r) * binom(2 * z + 1, 2 * (n - r)) *
                 binom(2 * z - n + r, r) * factorial(2 * r) * factorial(2 * (n - r)) / (fn * fn);
    if (n % 2) s.lhs = -s.lhs;
    s.rhs = binom(2 * n - 2 * y - 2 * z - 2, n) * binom(2 * y, n) * binom(2 * z, n);
    return s;
}

Sides half_reduced_form(int n, const Q &y, const Q &z)
{
    Sides s;
    for (int r = 0; r <= n; ++r)
        s.lhs += binom(2 * y - r, r) * (binom(2 * z - n + r, n - r) + 2 * binom(2 * z - n + r, n - r - 1));
    s.rhs = binom(2 * y + 2 * z - n + 1, n);
    return s;
}

VerificationReport zagier_check(int n, const Q &a, const Q &y, const Q &z)
{
    VerificationReport rep;
    rep.suite = "zagier";
    std::string pt = "n=" + std::to_string(n) + " (y,z,a)=" + point_str({y, z, a});
    Q P = zagier_P(n, y, z, a), Qv = zagier_Q(n, y, z, a);
    rep.add("cleared " + pt, P == Qv, rational_str(P), rational_str(Qv));
    Sides raw = zagier_raw(n, y, z, a);
    if (raw.excluded)
        rep.exclude("raw " + pt, "vanishing denominator");
    else
        rep.add("raw " + pt, raw.lhs == raw.rhs, rational_str(raw.lhs), rational_str(raw.rhs));
    if (a == Q(1, 2)) {
        Sides h = half_product_form(n, y, z), g = half_reduced_form(n, y, z);
        rep.add("half product " + pt, h.lhs == h.rhs, rational_str(h.lhs), rational_str(h.rhs));
        rep.add("half reduced " + pt, g.lhs == g.rhs, rational_str(g.lhs), rational_str(g.rhs));
    }
    return rep;
}

Q S0(int n, const Q &A, const Q &B)
{
    Q s = 0;
    for (int k = 0; k <= n; ++k) s += binom(k + A, n - k) * binom(n - k + B, k);
    return s;
}

Q S(int n, const Q &X)
{
    Q s = 0;
    for (int p = 0; 2 * p <= n; ++p) s += binom(X + n - 1 - 2 * p, n - 2 * p);
    return s;
}

VerificationReport s_sums_check(int n, const Q &A, const Q &B)
{
    VerificationReport rep;
    rep.suite = "s-sums";
    std::string pt = "n=" + std::to_string(n) + " (A,B)=" + point_str({A, B});
    Q s0 = S0(n, A, B), s = S(n, A + B);
    rep.add("lemma " + pt, s0 == s, rational_str(s0), rational_str(s));
    Q X = A + B;
    if (n >= 1) {
        Q l = S(n, X - 1) + 2 * S(n - 1, X), r = binom(X + n, n);
        rep.add("two-step " + pt, l == r, rational_str(l), rational_str(r));
    }
    Q up = S0(n + 1, A, B);
    Q r1 = S0(n, A - 1, B + 1) + S0(n + 1, A - 1, B), r2 = S0(n, A + 1, B - 1) + S0(n + 1, A, B - 1);
    rep.add("S0 recurrences " + pt, up == r1 && up == r2, rational_str(up), rational_str(r1) + "," + rational_str(r2));
    Q su = S(n + 1, X), sr = S(n + 1, X - 1) + S(n, X);
    rep.add("S recurrence " + pt, su == sr, rational_str(su), rational_str(sr));
    return rep;
}

Sides triple_sides(int l1, int l2, int l3, const Q &E)
{
    Sides out;
    for (int r = 0; r <= l1; ++r)
        for (int s = 0; s <= l2; ++s)
            for (int t = 0; t <= l3; ++t) {
                int sg = (l1 + l2 - s) % 2 ? -1 : 1;
                out.lhs += sg * binom(E + l1 + s + l3 - t - 1, l3 - t) * binom(E + r + s - 1, s) *
                         binom(E + l2 + r + t - 1, t) * binom(E + r + s - 1, r) *
                         binom(E + l1 - r + l2 - s + l3 - 1, l1 - r) * binom(E + l3 + l2 - s - 1, l2 - s);
                out.rhs += sg * binom(E + l1 + s + l3 - t - 1, l3 - t) * binom(E + l1 + s - 1, s) *
                         binom(E + l2 - s + t - 1, t) * binom(E + l2 + t + r - 1, r) *
                         binom(E + l1 - r + l2 - s + l3 - 1, l1 - r) * binom(E + t + l2 - s - 1, l2 - s);
            }
    return out;
}

VerificationReport triple_identity_check(int l1, int l2, int l3, const Q &E)
{
    VerificationReport rep;
    rep.suite = "triple";
    Sides s = triple_sides(l1, l2, l3, E);
    std::string id = "(l1,l2,l3)=(" + std::to_string(l1) + "," + std::to_string(l2) + "," + std::to_string(l3) +
                     ") E=" + rational_str(E);
    rep.add(id, s.lhs == s.rhs, rational_str(s.lhs), rational_str(s.rhs),
            s.lhs == s.rhs ? "" : "interpretation mismatch (E read as one scalar)");
    return rep;
}

GridSpec GridSpec::from_json(const nlohmann::json &j)
{
    GridSpec g;
    g.identity = j.at("identity").get<std::string>();
    g.n_max = j.value("n_max", 0);
    auto read = [](const nlohmann::json &v) {
        return v.is_string() ? parse_rational(v.get<std::string>()) : Q(v.get<long>());
    };
    if (j.contains("grid"))
        for (auto &v : j["grid"]) g.grid.push_back(read(v));
    if (j.contains("a"))
        for (auto &v : j["a"]) g.a_values.push_back(read(v));
    return g;
}

int degree_bound(const std::string &id, int n)
{
    if (id == "assoc" || id == "lemma" || id == "two-step") return n;
    if (id == "zagier" || id == "half") return 2 * n;
    if (id == "triple") return 3 * n;
    throw std::invalid_argument("unknown identity: " + id);
}

std::vector<Q> default_grid(const std::string &id, int n)
{
    int need = degree_bound(id, n) + 1;
    std::vector<Q> g;
    if (id == "assoc")
        for (int i = 1; i <= need; ++i) g.push_back(i);
    else if (id == "zagier")
        for (int i = 1; i <= need; ++i) g.push_back(frac(i, 2));
    else if (id == "triple")
        for (int i = 1; i <= std::max(need, 12); ++i) g.push_back(frac(i, 3));
    else
        for (int i = 0; i < need; ++i) g.push_back(i);
    return g;
}

// runs f(0..count-1) over jobs threads, merging in index order
static VerificationReport run_parallel(const std::string &suite, std::size_t count, int jobs,
                                       const std::function<VerificationReport(std::size_t)> &f)
{
    std::vector<VerificationReport> parts(count);
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += jobs) parts[i] = f(i);
        });
    for (auto &th : pool) th.join();
    VerificationReport rep;
    rep.suite = suite;
    for (auto &p : parts) rep.merge(p);
    return rep;
}

VerificationReport run_grid(const GridSpec &spec, int jobs)
{
    const std::string &id = spec.identity;
    struct Case {
        int n;
        std::vector<Q> pt;
    };
    std::vector<Case> cases;
    VerificationReport notes;
    for (int n = 0; n <= spec.n_max; ++n) {
        std::vector<Q> g = spec.grid.empty() ? default_grid(id, n) : spec.grid;
        int bound = degree_bound(id, n);
        if ((int)g.size() <= bound)
            notes.add("grid size n=" + std::to_string(n), false, std::to_string(g.size()), std::to_string(bound),
                      "grid does not exceed the per-variable degree bound");
        if (id == "assoc") {
            for (auto &a : g)
                for (auto &b : g)
                    for (auto &c : g) cases.push_back({n, {a, b, c}});
        } else if (id == "zagier") {
            std::vector<Q> as = spec.a_values.empty() ? std::vector<Q>{Q(1, 2), Q(1), Q(3, 2)} : spec.a_values;
            for (auto &a : as)
                for (auto &y : g)
                    for (auto &z : g) cases.push_back({n, {y, z, a}});
        } else if (id == "half" || id == "lemma") {
            for (auto &a : g)
                for (auto &b : g) cases.push_back({n, {a, b}});
        } else if (id == "two-step") {
            if (n == 0) continue;
            for (auto &x : g) cases.push_back({n, {x}});
        } else if (id == "triple") {
            for (int l1 = 0; l1 <= n; ++l1)
                for (int l2 = 0; l2 <= n; ++l2)
                    for (int l3 = 0; l3 <= n; ++l3)
                        if (std::max({l1, l2, l3}) == n)
                            for (auto &e : g) cases.push_back({l1 * 10000 + l2 * 100 + l3, {e}});
        } else {
            throw std::invalid_argument("unknown identity: " + id);
        }
    }
    VerificationReport rep = run_parallel(id, cases.size(), jobs, [&](std::size_t i) -> VerificationReport {
        const Case &c = cases[i];
        if (id == "assoc") return assoc_identity_check(c.n, c.pt[0], c.pt[1], c.pt[2]);
        if (id == "zagier") return zagier_check(c.n, c.pt[2], c.pt[0], c.pt[1]);
        if (id == "half") {
            VerificationReport r;
            std::string pt = "n=" + std::to_string(c.n) + " (y,z)=" + point_str(c.pt);
            Sides h = half_product_form(c.n, c.pt[0], c.pt[1]), g = half_reduced_form(c.n, c.pt[0], c.pt[1]);
            r.add("half product " + pt, h.lhs == h.rhs, rational_str(h.lhs), rational_str(h.rhs));
            r.add("half reduced " + pt, g.lhs == g.rhs, rational_str(g.lhs), rational_str(g.rhs));
            return r;
        }
        if (id == "lemma") {
            VerificationReport r;
            Q s0 = S0(c.n, c.pt[0], c.pt[1]), s = S(c.n, c.pt[0] + c.pt[1]);
            r.add("lemma n=" + std::to_string(c.n) + " (A,B)=" + point_str(c.pt), s0 == s, rational_str(s0),
                  rational_str(s));
            return r;
        }
        if (id == "two-step") {
            VerificationReport r;
            const Q &X = c.pt[0];
            Q l = S(c.n, X - 1) + 2 * S(c.n - 1, X), rr = binom(X + c.n, c.n);
            r.add("two-step n=" + std::to_string(c.n) + " X=" + rational_str(X), l == rr, rational_str(l),
                  rational_str(rr));
            return r;
        }
        return triple_identity_check(c.n / 10000, (c.n / 100) % 100, c.n % 100, c.pt[0]);
    });
    notes.suite = id;
    notes.merge(rep);
    return notes;
}

}  // namespace udf::eholzer
