#include "acceptance_suite.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "udf/eholzer.hpp"
#include "udf/udf.hpp"

namespace acceptance {

using namespace udf;
using h1::Element;
using h1::Tensor;
using engine::Tuple;
using jet::CrossedElement;
using jet::JetPoly;
using weyl::Kind;
using weyl::Params;

namespace {

// (-i hbar / 2)^k
HbarScalar unit_power(int k)
{
    HbarScalar u(GaussianRational(0, mpq_class(-1, 2)), 1), r(1);
    for (int i = 0; i < k; ++i) r = r * u;
    return r;
}

Element q(long n, long d) { return Element(HbarScalar::frac(n, d)); }
Element X() { return Element::X(); }
Element Y() { return Element::Y(); }
Element d1() { return Element::delta(1); }
Element d2p() { return Element::delta2p(); }
Element Yp(long n, long d) { return Element::Y_plus(GaussianRational::frac(n, d)); }
Element SX() { return h1::antipode(Element::X()); }
// (Y + 1/2) Y and (Y + 1)(Y + 1/2) Y
Element P2() { return Yp(1, 2) * Y(); }
Element P3() { return Yp(1, 1) * Yp(1, 2) * Y(); }

Tensor T(const Element &a, const Element &b) { return Tensor::pure(a, b); }

Tensor expected_order1() { return (T(SX(), Y()) + T(Y(), X())).scaled(unit_power(1)); }

Tensor expected_order2()
{
    Tensor t = T(q(1, 2) * SX() * SX(), P2()) + T(SX() * Yp(1, 2), X() * Yp(1, 2)) + T(q(1, 2) * Y() * Yp(1, 2), X() * X()) +
               T(q(1, 2) * d2p() * P2(), Y()) + T(q(1, 6) * d2p(), P3()) + T(q(1, 2) * d2p() * Y(), P2());
    return t.scaled(unit_power(2));
}

struct TableEntry {
    Tuple m, n;
    Tensor value;
};

// the lower-order table, each entry in units of (-i hbar/2)^k; `literal` selects the printed
// delta_2' in the X-term of the (0,0,2,0,0;2,0,0,0,0) entry instead of the degree-consistent delta_1
std::vector<TableEntry> table_entries(bool literal)
{
    std::vector<TableEntry> e;
    auto u1 = unit_power(1), u2 = unit_power(2);
    e.push_back({{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, T(X(), Y()).scaled(-u1)});
    e.push_back({{0, 0, 1, 0, 0}, {1, 0, 0, 0, 0}, (T(d1() * Y(), Y()) + T(Y(), X())).scaled(u1)});
    auto add2 = [&](Tuple m, Tuple n, Tensor t) { e.push_back({m, n, t.scaled(u2)}); };
    add2({0, 3, 0, 0, 0}, {1, 0, 2, 0, 0}, T(q(-1, 4) * d2p() * Y(), P2()));
    add2({0, 3, 0, 0, 0}, {2, 0, 1, 0, 0}, T(q(1, 4) * d2p() * P2(), Y()));
    add2({0, 0, 0, 3, 0}, {1, 0, 2, 0, 0}, T(q(-1, 4) * Y(), d2p() * P2()));
    add2({0, 0, 0, 3, 0}, {2, 0, 1, 0, 0}, T(q(-1, 4) * P2(), d2p() * Y()));
    add2({0, 0, 0, 0, 3}, {1, 0, 2, 0, 0}, T(q(1, 4) * d2p() * Y(), P2()) + T(q(1, 4) * Y(), d2p() * P2()));
    add2({0, 0, 0, 0, 3}, {2, 0, 1, 0, 0}, T(q(1, 4) * d2p() * P2(), Y()) + T(q(1, 4) * P2(), d2p() * Y()));
    add2({0, 3, 0, 0, 0}, {3, 0, 0, 0, 0}, T(q(-1, 12) * d2p() * P3(), Element::one()));
    add2({0, 3, 0, 0, 0}, {0, 0, 3, 0, 0}, T(q(1, 12) * d2p(), P3()));
    add2({0, 0, 0, 3, 0}, {3, 0, 0, 0, 0}, T(q(-1, 12) * P3(), d2p()));
    add2({0, 0, 0, 3, 0}, {0, 0, 3, 0, 0}, T(q(-1, 12) * Element::one(), d2p() * P3()));
    add2({0, 0, 0, 0, 3}, {3, 0, 0, 0, 0}, T(q(1, 12) * d2p() * P3(), Element::one()) + T(q(1, 12) * P3(), d2p()));
    add2({0, 0, 0, 0, 3}, {0, 0, 3, 0, 0}, T(q(1, 12) * d2p(), P3()) + T(q(1, 12) * Element::one(), d2p() * P3()));
    add2({2, 0, 0, 0, 0}, {0, 0, 2, 0, 0}, T(q(1, 2) * X() * X(), P2()));
    Element xterm = literal ? d2p() : d1();
    add2({0, 0, 2, 0, 0}, {2, 0, 0, 0, 0},
         T(q(1, 2) * P2(), X() * X()) + T(q(1, 2) * d2p() * P2(), Y()) + T(d1() * P2(), X() * Y()) +
             T(q(1, 2) * xterm * P2(), X()) + T(q(1, 2) * d1() * d1() * P2(), Y() * Y()) +
             T(q(1, 4) * d1() * d1() * P2(), Y()) + T(q(-1, 2) * d2p() * Y() * Yp(1, 2), Y()));
    add2({1, 0, 1, 0, 0}, {1, 0, 1, 0, 0},
         T(q(-1, 1) * X() * Yp(1, 2), X() * Yp(1, 2)) + T(q(-1, 1) * d1() * X() * Yp(1, 2), Y() * Yp(1, 2)));
    return e;
}

std::string tuple_str(const Tuple &m, const Tuple &n)
{
    std::string s = "R_{";
    for (int i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(m[i]);
    s += ";";
    for (int i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(n[i]);
    return s + "}";
}

bool order01_holds(const engine::RTensor &R)
{
    return R.orders.size() >= 2 && R.orders[0] == Tensor::unit(2) && R.orders[1] == expected_order1();
}

std::string report_counts(const VerificationReport &r)
{
    return std::to_string(r.passed()) + " pass, " + std::to_string(r.failed()) + " fail, " +
           std::to_string(r.excluded()) + " excluded";
}

void add_failures(Result &res, const VerificationReport &r, std::size_t limit = 5)
{
    std::size_t shown = 0;
    for (auto &e : r.entries)
        if (e.status == Status::Fail && shown++ < limit)
            res.notes.push_back("failed: " + (r.suite.empty() ? "" : r.suite + ": ") + e.case_id +
                                (e.detail.empty() ? "" : " (" + e.detail + ")"));
}

Result criterion1()
{
    Result r{1};
    auto t0 = std::chrono::steady_clock::now();
    auto R = engine::extract_R(1);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool zero = R.orders[0] == Tensor::unit(2), one = R.orders[1] == expected_order1();
    r.pass = zero && one && s < 1.0;
    r.summary = "R order 0 is 1(x)1 and order 1 is (-ih/2)(S(X)(x)Y + Y(x)X)";
    if (!zero) r.notes.push_back("order 0: " + R.orders[0].str());
    if (!one) r.notes.push_back("order 1: " + R.orders[1].str());
    if (s >= 1.0) r.notes.push_back("runtime limit of 1 s exceeded");
    return r;
}

Result criterion2()
{
    Result r{2};
    r.summary = "R order 2 display and every lower-order table entry per tuple";
    auto R = engine::extract_R(2);
    bool display = R.orders[2] == expected_order2();
    if (!display) r.notes.push_back("order 2 display differs: " + R.orders[2].str());

    std::map<std::pair<Tuple, Tuple>, Tensor> computed;
    for (int k = 1; k <= 2; ++k) {
        Tensor sum;
        for (auto &[key, t] : engine::contributions_at(k)) {
            computed[key] = t;
            sum += t;
        }
        if (!(sum == R.orders[k])) {
            display = false;
            r.notes.push_back("contributions at order " + std::to_string(k) + " do not sum to R");
        }
    }

    auto literal = table_entries(true), consistent = table_entries(false);
    std::set<std::pair<Tuple, Tuple>> listed;
    int matched = 0;
    for (std::size_t i = 0; i < literal.size(); ++i) {
        auto key = std::make_pair(literal[i].m, literal[i].n);
        listed.insert(key);
        auto it = computed.find(key);
        Tensor got = it == computed.end() ? Tensor() : it->second;
        if (got == literal[i].value) {
            ++matched;
            continue;
        }
        std::string note = "table entry " + tuple_str(key.first, key.second) + " differs from the printed value";
        if (got == consistent[i].value) note += "; it equals the entry with delta_1 in place of delta_2' in the X-term";
        r.notes.push_back(note);
    }
    bool same_set = true;
    for (auto &[key, t] : computed)
        if (!listed.count(key)) {
            same_set = false;
            r.notes.push_back("unlisted contributing tuple " + tuple_str(key.first, key.second));
        }
    if (computed.size() != listed.size()) same_set = false;
    r.notes.insert(r.notes.begin(), std::to_string(matched) + "/" + std::to_string(literal.size()) +
                                        " table entries match; order 2 display " + (display ? "matches" : "differs"));
    r.pass = display && same_set && matched == (int)literal.size();
    return r;
}

Result criterion3()
{
    Result r{3};
    r.summary = "pentagon and both counit identities at every order <= 3";
    auto rep = engine::verify_udf(engine::extract_R(3), 3);
    r.pass = rep.ok();
    r.notes.push_back(report_counts(rep));
    add_failures(r, rep);
    return r;
}

CrossedElement random_element(std::mt19937 &rng)
{
    static const char *names[] = {"f", "g", "h"};
    static const int gens[] = {1, 2, 3, -1, -2, -3};
    std::uniform_int_distribution<int> pick3(0, 2), pick2(0, 1), pick6(0, 5), terms(1, 2), len(0, 2), num(-3, 3);
    CrossedElement e;
    int count = terms(rng);
    for (int t = 0; t < count; ++t) {
        jet::GroupWord w;
        for (int l = len(rng); l > 0; --l) w.push_back(gens[pick6(rng)]);
        int c = num(rng);
        if (c == 0) c = 1;
        JetPoly p = JetPoly::from_letter(jet::function_letter(names[pick3(rng)], pick2(rng), pick2(rng)),
                                         HbarScalar::frac(c, 1 + pick2(rng)));
        e += CrossedElement(p, w);
    }
    return e;
}

Result criterion4()
{
    Result r{4};
    r.summary = "star_via_R equals star on 20 random pairs, star associative on 10 random triples (order 3)";
    const int N = 3;
    std::mt19937 rng(20240611);
    auto R = engine::extract_R(N);
    engine::StarEngine eng(N);
    int pairs_ok = 0, triples_ok = 0;
    for (int i = 0; i < 20; ++i) {
        auto a = random_element(rng), b = random_element(rng);
        if (eng.star(a, b) == engine::star_via_R(R, a, b, N))
            ++pairs_ok;
        else
            r.notes.push_back("pair " + std::to_string(i) + " differs: " + a.str() + " , " + b.str());
    }
    for (int i = 0; i < 10; ++i) {
        auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
        if (eng.star(eng.star(a, b), c) == eng.star(a, eng.star(b, c)))
            ++triples_ok;
        else
            r.notes.push_back("triple " + std::to_string(i) + " not associative");
    }
    r.notes.insert(r.notes.begin(), std::to_string(pairs_ok) + "/20 pairs, " + std::to_string(triples_ok) + "/10 triples");
    r.pass = pairs_ok == 20 && triples_ok == 10;
    return r;
}

int differing_cells(const weyl::WeylSection &a, const weyl::WeylSection &b, int total)
{
    int d = 0;
    for (int m = 0; m <= total; ++m)
        for (int n = 0; m + n <= total; ++n)
            if (!(a.coeff(m, n) == b.coeff(m, n))) ++d;
    return d;
}

const std::vector<Kind> &all_kinds()
{
    static const std::vector<Kind> k{Kind::HatF, Kind::AlphaHatG, Kind::UAlphaInv, Kind::UAlphaBeta, Kind::VAlphaBeta};
    return k;
}

Result criterion5()
{
    Result r{5};
    r.summary = "closed form = coefficient recursion = Fedosov iteration for m+n <= 8, all five families";
    Params p;
    weyl::Cut cut;
    cut.max_m = 8;
    cut.max_deg = 16;
    r.pass = true;
    for (Kind k : all_kinds()) {
        auto spec = weyl::family_spec(k, p);
        auto rec = weyl::solve_recursion(spec, p, 8, 9).triangle(8);
        auto closed = weyl::build_closed(spec, p, 8, 8).triangle(8);
        auto fed = weyl::fedosov_iterate(spec, p, cut).triangle(8);
        bool ok = !rec.is_zero() && rec == closed && rec == fed;
        r.pass = r.pass && ok;
        int printed = differing_cells(weyl::build_printed(k, p, 8, 8), rec, 8);
        r.notes.push_back(weyl::kind_name(k) + ": " + (ok ? "agree" : "DISAGREE") + "; printed closed form differs in " +
                          std::to_string(printed) + " cells");
    }
    return r;
}

bool window_zero(const weyl::FormSection &f, int max_order, int max_n)
{
    weyl::Cut c;
    c.max_order = max_order;
    c.max_n = max_n;
    return f.pruned(c).is_zero();
}

Result criterion6()
{
    Result r{6};
    r.summary = "flatness of f^ and v, U^-1 U = 1, delta_2' cocycle, unit laws, hbar valuation, y-grade";
    Params p;
    const int N = 3, nw = N;
    weyl::Cut order;
    order.max_order = N;
    weyl::Cut window = order;
    window.max_n = nw;
    auto build = [&](const weyl::SectionSpec &s, int n_order) {
        weyl::Cut c;
        c.max_order = n_order;
        return weyl::solve_recursion(s, p, engine::max_u_degree(n_order), nw + engine::max_u_degree(n_order) + 2)
            .pruned(c);
    };
    auto one = weyl::WeylSection::constant(weyl::CoeffExpr(JetPoly(HbarScalar(1))));
    auto check = [&](const std::string &name, bool ok) {
        r.notes.push_back(name + ": " + (ok ? "pass" : "FAIL"));
        r.pass = r.pass && ok;
    };
    r.pass = true;

    auto f = build(weyl::family_spec(Kind::HatF, p), N);
    check("D f^ = 0", window_zero(weyl::connection(f, p), N - 1, nw));
    auto u1 = build(weyl::family_spec(Kind::UAlphaInv, p), N);
    auto u2 = build(weyl::family_spec(Kind::UAlphaBeta, p), N);
    auto u3 = build(weyl::family_spec(Kind::VAlphaBeta, p), N);
    auto v = weyl::moyal(weyl::moyal(u1, u2, p, order), u3, p, order);
    check("D v = 0", window_zero(weyl::connection(v, p), N - 1, nw));
    check("v = 1", v.pruned(window) == one);
    auto ua = build(weyl::family_spec_words(Kind::VAlphaBeta, jet::parse_word("a"), {}, {}, p), N);
    check("U_a^-1 U_a = 1", weyl::moyal(u1, ua, p, order).pruned(window) == one);
    {
        const int N4 = 4;
        weyl::Cut o4, w4;
        o4.max_order = w4.max_order = N4;
        w4.max_n = nw;
        auto i4 = build(weyl::family_spec(Kind::UAlphaInv, p), N4);
        auto a4 = build(weyl::family_spec_words(Kind::VAlphaBeta, jet::parse_word("a"), {}, {}, p), N4);
        auto prod = weyl::moyal(i4, a4, p, o4).pruned(w4);
        auto resid = prod - one;
        std::string s = resid.is_zero() ? "0" : resid.coeff(0, 0).str();
        r.notes.push_back("informational: U_a^-1 U_a - 1 at order 4 has constant term " + s);
    }

    bool cocycle = true;
    std::vector<std::string> words{"a", "b", "A", "ab", "aB", "Ab", "ba", "abA", "id"};
    for (auto &s1 : words)
        for (auto &s2 : words) {
            auto w1 = jet::parse_word(s1), w2 = jet::parse_word(s2);
            auto lhs = jet::jet_of_product(jet::concat(w1, w2), 2, jet::JetVariant::Delta2Prime);
            auto rhs = jet::jet_of_product(w1, 2, jet::JetVariant::Delta2Prime) +
                       jet::prefix(w1, jet::jet_of_product(w2, 2, jet::JetVariant::Delta2Prime));
            if (!(lhs == rhs)) cocycle = false;
        }
    check("delta_2'(w1 w2) = delta_2'(w1) + w1(delta_2'(w2)) on 81 word pairs", cocycle);

    engine::StarEngine eng(N);
    CrossedElement unit(JetPoly(HbarScalar(1)), {});
    bool units = true;
    for (auto &s : words) {
        auto w = jet::parse_word(s);
        auto g = CrossedElement(JetPoly::from_letter(jet::function_letter("g", 1, 0)), w);
        auto fx = CrossedElement(JetPoly::from_letter(jet::function_letter("f", 0, 1)), w);
        if (!(eng.star(unit, g) == g) || !(eng.star(fx, unit) == fx)) units = false;
    }
    check("1*g w = g w and f w*1 = f w at order 3", units);

    bool val = true, grade = true;
    for (Kind k : all_kinds()) {
        auto s = weyl::solve_recursion(weyl::family_spec(k, p), p, 8, 8);
        for (auto &[idx, c] : s.terms()) {
            auto [m, n] = idx;
            if (auto v0 = c.valuation(); v0 && *v0 < -(m / 3)) val = false;
            for (auto &[y, poly] : c.terms())
                if (y != m - n) grade = false;
        }
    }
    check("hbar valuation of every (m,n) coefficient >= -floor(m/3), m,n <= 8", val);
    check("every (m,n) coefficient has y-grade m-n, so restriction keeps sum m = sum n", grade);

    bool balanced = true;
    for (int k = 0; k <= 2; ++k)
        for (auto &[key, t] : engine::contributions_at(k)) {
            int sm = 0, sn = 0;
            for (int i = 0; i < 5; ++i) sm += key.first[i], sn += key.second[i];
            if (sm != sn) balanced = false;
        }
    check("contributing tuples at orders <= 2 have sum m = sum n", balanced);
    return r;
}

Result criterion7()
{
    Result r{7};
    r.summary = "appendix identities on grids exceeding the degree bounds";
    r.pass = true;
    struct Run {
        const char *id;
        int n;
    };
    for (Run run : {Run{"assoc", 8}, Run{"half", 16}, Run{"lemma", 30}, Run{"two-step", 30}, Run{"zagier", 8},
                    Run{"triple", 3}}) {
        eholzer::GridSpec g;
        g.identity = run.id;
        g.n_max = run.n;
        auto rep = eholzer::run_grid(g);
        r.pass = r.pass && rep.ok();
        r.notes.push_back(std::string(run.id) + " n<=" + std::to_string(run.n) + ": " + report_counts(rep));
        add_failures(r, rep);
    }
    return r;
}

Result criterion8()
{
    Result r{8};
    r.summary = "exactly one Moyal sign reproduces R orders 0 and 1";
    Params minus, plus;
    minus.sigma = -1;
    plus.sigma = +1;
    bool a = order01_holds(engine::extract_R(1, minus)), b = order01_holds(engine::extract_R(1, plus));
    r.notes.push_back(std::string("sigma = -1: ") + (a ? "holds" : "fails"));
    r.notes.push_back(std::string("sigma = +1: ") + (b ? "holds" : "fails"));
    r.pass = a != b;
    return r;
}

}  // namespace

Result run(int id)
{
    static const std::function<Result()> table[] = {criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
    if (id < 1 || id > kCriteria) throw std::out_of_range("no criterion " + std::to_string(id));
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = table[id - 1]();
    } catch (const std::exception &e) {
        r = Result{id};
        r.summary = "threw";
        r.notes.push_back(e.what());
    }
    r.id = id;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string location(int id)
{
    static const char *where[] = {
        "explicit R, orders 0 and 1",
        "explicit R, order 2 and the per-tuple table",
        "universal deformation formula axioms",
        "main theorem: star = m(R(. (x) .)), associativity",
        "coefficient tables of the five section families",
        "flat sections, associator, cocycle, unit laws, hbar bounds",
        "appendix: Eholzer product associativity",
        "Moyal sign calibration",
    };
    return id >= 1 && id <= kCriteria ? where[id - 1] : "";
}

std::string line(const Result &r)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.summary << " (" << r.seconds << " s)";
    for (auto &n : r.notes) os << "\n    " << n;
    return os.str();
}

}  // namespace acceptance
