#include "udf/udf.hpp"

#include <functional>
#include <stdexcept>

namespace udf::engine {

using weyl::CoeffExpr;
using weyl::Cut;
using weyl::Kind;
using weyl::WeylSection;

h1::Tensor RTensor::total() const
{
    h1::Tensor t(2);
    for (auto &o : orders) t += o;
    return t;
}

nlohmann::json RTensor::to_json() const
{
    auto os = nlohmann::json::array();
    for (int k = 0; k < (int)orders.size(); ++k) {
        auto ts = nlohmann::json::array();
        for (auto &[key, c] : orders[k].terms())
            ts.push_back({{"left", key[0].to_json()}, {"right", key[1].to_json()}, {"coeff", c.to_json()}});
        os.push_back({{"k", k}, {"terms", ts}});
    }
    return {{"orders", os}};
}

RTensor RTensor::from_json(const nlohmann::json &j)
{
    RTensor R;
    for (auto &o : j.at("orders")) {
        h1::Tensor t(2);
        for (auto &e : o.at("terms"))
            t.add({h1::Monomial::from_json(e.at("left")), h1::Monomial::from_json(e.at("right"))},
                  HbarScalar::from_json(e.at("coeff")));
        int k = o.at("k").get<int>();
        if (k != (int)R.orders.size()) throw std::runtime_error("RTensor orders out of sequence");
        R.orders.push_back(t);
    }
    R.max_order = (int)R.orders.size() - 1;
    return R;
}

std::string RTensor::str() const
{
    std::string s;
    for (int k = 0; k < (int)orders.size(); ++k) s += "order " + std::to_string(k) + ":\n" + orders[k].str() + "\n";
    return s;
}

std::string RTensor::latex() const
{
    std::string s;
    // (-i hbar / 2)^{-1} = 2i hbar^{-1}
    HbarScalar unit(GaussianRational(0, 2), -1);
    HbarScalar scale(1);
    for (int k = 0; k < (int)orders.size(); ++k) {
        h1::Tensor t = orders[k].scaled(scale);
        s += "R_{" + std::to_string(k) + "} &= ";
        if (k > 0) s += "\\left(\\frac{-i\\hbar}{2}\\right)^{" + std::to_string(k) + "}\\Big(";
        s += t.latex();
        if (k > 0) s += "\\Big)";
        s += "\\\\\n";
        scale = scale * unit;
    }
    return s;
}

int max_u_degree(int N)
{
    int m = 0;
    while ((m + 1) - (m + 1) / 3 <= N) ++m;
    return m;
}

WeylSection StarEngine::build(const weyl::SectionSpec &s) const
{
    int M = max_u_degree(N_);
    int Nn = (3 * N_) / 2;
    Cut cut;
    cut.max_order = N_;
    cut.max_n = Nn;
    return weyl::solve_recursion(s, p_, M, Nn).pruned(cut);
}

WeylSection StarEngine::inverse_of(const weyl::SectionSpec &s) const
{
    int M = max_u_degree(N_);
    int Nn = (3 * N_) / 2;
    Cut wide;
    wide.max_order = N_;
    wide.max_n = Nn + 2 * M + 2;
    WeylSection u = weyl::solve_recursion(s, p_, M, wide.max_n).pruned(wide);
    Cut cut;
    cut.max_order = N_;
    cut.max_n = Nn;
    return weyl::moyal_inverse(u, p_, wide).pruned(cut);
}

const WeylSection &StarEngine::section(Kind k, const GroupWord &w1, const GroupWord &w2)
{
    auto key = std::make_tuple((int)k, w1, w2);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    WeylSection s;
    JetPoly one(HbarScalar(1));
    if (reading_ == InverseReading::Moyal && k == Kind::UAlphaInv)
        s = inverse_of({one, weyl::delta_poly(w1, p_), {}});
    else if (reading_ == InverseReading::Moyal && k == Kind::UAlphaBeta)
        s = inverse_of({one, weyl::delta_poly(jet::concat(w1, w2), p_), weyl::delta_poly(w1, p_)});
    else
        s = build(weyl::family_spec_words(k, w1, w2, {}, p_));
    return cache_.emplace(key, std::move(s)).first->second;
}

JetPoly StarEngine::generic_term(const GroupWord &w1, const GroupWord &w2)
{
    auto key = std::make_pair(w1, w2);
    if (auto it = generic_.find(key); it != generic_.end()) return it->second;
    JetPoly phi = JetPoly::from_letter(jet::function_letter(kLeft));
    JetPoly psi = JetPoly::from_letter(jet::function_letter(kRight));
    Cut cut;
    cut.max_order = N_;
    cut.max_n = (3 * N_) / 2;
    WeylSection f = build(weyl::family_spec_words(Kind::HatF, w1, w2, phi, p_));
    WeylSection g = build(weyl::family_spec_words(Kind::AlphaHatG, w1, w2, psi, p_));
    const WeylSection &u1 = section(Kind::UAlphaInv, w1, {});
    WeylSection left = weyl::moyal(weyl::moyal(f, u1, p_, cut), g, p_, cut);
    const WeylSection &u2 = section(Kind::UAlphaBeta, w1, w2);
    const WeylSection &u3 = section(Kind::VAlphaBeta, w1, w2);
    WeylSection right = weyl::moyal(u2, u3, p_, cut);
    CoeffExpr at0 = weyl::pair_at_origin(left, right, p_, N_);
    for (auto &[y, poly] : at0.terms())
        if (y != 0) throw std::runtime_error("nonzero y-grade after restriction to the origin");
    return generic_.emplace(key, at0.at(0)).first->second;
}

// X^a Y^b applied to p, memoized per (a, b)
static JetPoly jet_of(std::map<std::pair<int, int>, JetPoly> &memo, const JetPoly &p, int a, int b)
{
    auto key = std::make_pair(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    JetPoly r = a > 0 ? jet::apply_X(jet_of(memo, p, a - 1, b)) : b > 0 ? jet::apply_Y(jet_of(memo, p, 0, b - 1)) : p;
    return memo.emplace(key, r).first->second;
}

JetPoly StarEngine::star_term(const JetPoly &phi, const GroupWord &w1, const JetPoly &psi, const GroupWord &w2)
{
    const JetPoly gen = generic_term(w1, w2);
    int fid = jet::function_name_id(kLeft), gid = jet::function_name_id(kRight);
    std::map<std::pair<int, int>, JetPoly> mf, mg;
    std::map<int, JetPoly> image;
    auto subst = [&](int id) -> JetPoly {
        if (auto it = image.find(id); it != image.end()) return it->second;
        const auto &d = jet::letter(id);
        JetPoly r = JetPoly::from_letter(id);
        if (d.kind == jet::Kind::Function && d.sym == fid) r = jet::prefix(d.prefix, jet_of(mf, phi, d.a, d.b));
        else if (d.kind == jet::Kind::Function && d.sym == gid) r = jet::prefix(d.prefix, jet_of(mg, psi, d.a, d.b));
        return image.emplace(id, r).first->second;
    };
    JetPoly out;
    for (auto &[m, c] : gen.terms()) {
        JetPoly t(c);
        for (auto &[id, e] : m) {
            JetPoly img = subst(id);
            for (int i = 0; i < e; ++i) t = JetPoly::mul(t, img, N_);
        }
        out += t;
    }
    return out.truncate(N_);
}

CrossedElement StarEngine::star(const CrossedElement &a, const CrossedElement &b)
{
    CrossedElement r;
    for (auto &[w1, phi] : a.terms())
        for (auto &[w2, psi] : b.terms()) r.add(jet::concat(w1, w2), star_term(phi, w1, psi, w2));
    return r;
}

h1::Tensor extract(const JetPoly &p)
{
    static const int f_id = jet::function_name_id("f");
    static const int g_id = jet::function_name_id("g");
    h1::Tensor t(2);
    for (auto &[mono, c] : p.terms()) {
        h1::Monomial L, R;
        int fs = 0, gs = 0;
        for (auto &[id, e] : mono) {
            const jet::LetterData &d = jet::letter(id);
            bool plain = d.prefix.empty();
            bool under_a = d.prefix == GroupWord{1};
            if (d.kind == jet::Kind::Function) {
                if (plain && d.sym == f_id) {
                    fs += e;
                    L.x = d.a;
                    L.y = d.b;
                } else if (under_a && d.sym == g_id) {
                    gs += e;
                    R.x = d.a;
                    R.y = d.b;
                } else {
                    throw std::runtime_error("extraction error: unexpected function letter " + jet::letter_str(id));
                }
            } else if (plain && d.sym == 1) {
                L.add_delta(d.a, e);
            } else if (under_a && d.sym == 2) {
                R.add_delta(d.a, e);
            } else {
                throw std::runtime_error("extraction error: unexpected jet " + jet::letter_str(id));
            }
        }
        if (fs != 1 || gs != 1) throw std::runtime_error("extraction error: monomial not bilinear in f, g");
        t.add({L, R}, c);
    }
    return t;
}

static RTensor split_orders(const h1::Tensor &t, int N)
{
    RTensor R;
    R.max_order = N;
    for (int k = 0; k <= N; ++k) R.orders.push_back(t.order_part(k));
    for (auto &[key, c] : t.terms())
        if (auto v = c.valuation(); v && *v < 0) throw std::runtime_error("negative hbar power in R");
    return R;
}

RTensor extract_R(int N, const Params &p, InverseReading r)
{
    StarEngine eng(N, p, r);
    auto f = CrossedElement::function("f", {1});
    auto g = CrossedElement::function("g", {2});
    CrossedElement fg = eng.star(f, g);
    auto it = fg.terms().find(GroupWord{1, 2});
    if (fg.terms().size() != 1 || it == fg.terms().end()) throw std::runtime_error("star product has wrong group word");
    return split_orders(extract(it->second), N);
}

static std::array<Kind, 5> factor_kinds()
{
    return {Kind::HatF, Kind::UAlphaInv, Kind::AlphaHatG, Kind::UAlphaBeta, Kind::VAlphaBeta};
}

static std::array<WeylSection, 5> factors(int N, const Params &p)
{
    StarEngine eng(N, p);
    std::array<WeylSection, 5> fs;
    auto kinds = factor_kinds();
    JetPoly f = JetPoly::from_letter(jet::function_letter("f"));
    JetPoly g = JetPoly::from_letter(jet::function_letter("g"));
    int M = max_u_degree(N), Nn = (3 * N) / 2;
    for (int i = 0; i < 5; ++i) {
        auto spec = weyl::family_spec_words(kinds[i], {1}, {2}, i == 0 ? f : g, p);
        fs[i] = weyl::solve_recursion(spec, p, M, Nn);
    }
    return fs;
}

static CoeffExpr tuple_value(const std::array<WeylSection, 5> &fs, const Tuple &m, const Tuple &n, const Params &p,
                             int N)
{
    CoeffExpr c(JetPoly(HbarScalar(1)));
    for (int i = 0; i < 5; ++i) {
        CoeffExpr ci = fs[i].coeff(m[i], n[i]);
        if (ci.is_zero()) return {};
        c = CoeffExpr::mul(c, ci);
    }
    WeylSection prod = WeylSection::monomial(m[0], n[0], CoeffExpr(JetPoly(HbarScalar(1))));
    for (int i = 1; i < 5; ++i)
        prod = weyl::moyal(prod, WeylSection::monomial(m[i], n[i], CoeffExpr(JetPoly(HbarScalar(1)))), p);
    CoeffExpr at0 = weyl::restrict_origin(prod);
    return CoeffExpr::mul(c, at0).truncate(N);
}

h1::Tensor contribution(const Tuple &m, const Tuple &n, int N, const Params &p)
{
    auto fs = factors(N, p);
    CoeffExpr v = tuple_value(fs, m, n, p, N);
    for (auto &[y, poly] : v.terms())
        if (y != 0) throw std::runtime_error("nonzero y-grade after restriction to the origin");
    return extract(v.at(0));
}

std::vector<std::pair<std::pair<Tuple, Tuple>, h1::Tensor>> contributions_at(int k, const Params &p)
{
    auto fs = factors(k, p);
    std::vector<std::pair<std::pair<Tuple, Tuple>, h1::Tensor>> out;
    std::array<std::vector<std::pair<int, int>>, 5> support;
    for (int i = 0; i < 5; ++i)
        for (auto &[idx, c] : fs[i].terms()) support[i].push_back(idx);
    Tuple m{}, n{};
    std::function<void(int, int, int, int)> rec = [&](int i, int sm, int sn, int sw) {
        if (i == 5) {
            if (sm != sn) return;
            CoeffExpr v = tuple_value(fs, m, n, p, k);
            JetPoly at = v.at(0);
            JetPoly exact;
            for (auto &[mono, c] : at.terms()) {
                auto ck = c.coeff(k);
                if (!ck.is_zero()) exact.add(mono, HbarScalar(ck, k));
            }
            if (!exact.is_zero()) out.push_back({{m, n}, extract(exact)});
            return;
        }
        for (auto [mi, ni] : support[i]) {
            // each factor term reaches at least hbar^(m - [m/3]) at the origin
            if (sw + mi - mi / 3 > k) continue;
            m[i] = mi;
            n[i] = ni;
            rec(i + 1, sm + mi, sn + ni, sw + mi - mi / 3);
        }
    };
    rec(0, 0, 0, 0);
    return out;
}

CrossedElement star_via_R(const RTensor &R, const CrossedElement &a, const CrossedElement &b, int N)
{
    CrossedElement r;
    for (int k = 0; k <= std::min(N, R.max_order); ++k)
        for (auto &[key, c] : R.orders[k].terms()) {
            CrossedElement l = jet::act(key[0], a), rr = jet::act(key[1], b);
            r += jet::cross_multiply(l, rr, N).scaled(c);
        }
    return r.truncate(N);
}

static h1::Tensor unit2() { return h1::Tensor::unit(2); }

VerificationReport verify_udf(const RTensor &R, int N)
{
    VerificationReport rep;
    rep.suite = "udf";
    h1::Tensor Rt = R.total().truncate(N);
    h1::Tensor lhs = h1::compose(h1::coproduct_leg(Rt, 1), h1::embed3(Rt, 0, 1), N);
    h1::Tensor rhs = h1::compose(h1::coproduct_leg(Rt, 2), h1::embed3(Rt, 1, 2), N);
    for (int k = 0; k <= N; ++k) {
        auto a = lhs.order_part(k), b = rhs.order_part(k);
        rep.add("pentagon order " + std::to_string(k), a == b, digest(a.str()), digest(b.str()));
    }
    h1::Element one = h1::Element::one();
    for (int leg = 1; leg <= 2; ++leg) {
        h1::Element e = h1::counit_leg(Rt, leg);
        rep.add(std::string("counit leg ") + std::to_string(leg), e == one, e.str(), one.str());
    }
    return rep;
}

static h1::Tensor series_inverse(const h1::Tensor &t, int N)
{
    h1::Tensor rest = t - unit2();
    h1::Tensor term = unit2(), sum = unit2();
    for (int i = 1; i <= N; ++i) {
        term = h1::compose(term, -rest, N);
        sum += term;
    }
    return sum.truncate(N);
}

static h1::Element series_inverse(const h1::Element &e, int N)
{
    h1::Element rest = e - h1::Element::one();
    h1::Element term = h1::Element::one(), sum = h1::Element::one();
    for (int i = 1; i <= N; ++i) {
        term = h1::multiply(term, -rest, N);
        sum += term;
    }
    return sum.truncate(N);
}

TwistResult twist(const RTensor &R, int N)
{
    if (R.orders.empty() || !(R.orders[0] == unit2())) throw std::invalid_argument("R must start with 1 (x) 1");
    TwistResult t;
    h1::Tensor Rt = R.total().truncate(N);
    h1::Tensor inv = series_inverse(Rt, N);
    t.R_inverse = split_orders(inv, N);
    h1::Element v = h1::multiply_antipode_left(Rt, N);
    for (int k = 0; k <= N; ++k) {
        h1::Element part;
        for (auto &[m, c] : v.terms())
            if (auto ck = c.coeff(k); !ck.is_zero()) part.add(m, HbarScalar(ck, k));
        t.v.push_back(part);
    }
    t.v_inverse = series_inverse(v, N);
    std::map<std::string, h1::Element> gens{{"X", h1::Element::X()}, {"Y", h1::Element::Y()}, {"d1", h1::Element::delta(1)}};
    for (auto &[name, a] : gens) {
        t.coproduct[name] = h1::compose(h1::compose(inv, h1::coproduct(a), N), Rt, N);
        t.antipode[name] = h1::multiply(h1::multiply(t.v_inverse, h1::antipode(a), N), v, N);
    }
    return t;
}

VerificationReport verify_twist(const RTensor &R, const TwistResult &t, int N)
{
    VerificationReport rep;
    rep.suite = "twist";
    h1::Tensor Rt = R.total().truncate(N);
    h1::Tensor inv = t.R_inverse.total();
    rep.add("R^-1 R = 1", h1::compose(inv, Rt, N) == unit2());
    rep.add("R R^-1 = 1", h1::compose(Rt, inv, N) == unit2());
    h1::Element v;
    for (auto &e : t.v) v += e;
    rep.add("v v^-1 = 1", h1::multiply(v, t.v_inverse, N) == h1::Element::one());
    int M = std::min(N, 2);
    h1::Tensor RM = Rt.truncate(M), invM = inv.truncate(M);
    for (auto &[name, d] : t.coproduct) {
        h1::Tensor dm = d.truncate(M);
        h1::Tensor l = h1::compose(h1::compose(h1::embed3(invM, 0, 1), h1::coproduct_leg(dm, 1), M), h1::embed3(RM, 0, 1), M);
        h1::Tensor r = h1::compose(h1::compose(h1::embed3(invM, 1, 2), h1::coproduct_leg(dm, 2), M), h1::embed3(RM, 1, 2), M);
        rep.add("twisted coproduct coassociative on " + name, l == r, digest(l.str()), digest(r.str()));
    }
    return rep;
}

}  // namespace udf::engine

namespace udf::engine {

VerificationReport verify_twisted_antipode(const TwistResult &t, int N)
{
    VerificationReport rep;
    rep.suite = "twisted antipode";
    int M = std::min(N, 2);
    h1::Element v;
    for (auto &e : t.v) v += e;
    v = v.truncate(M);
    h1::Element vi = t.v_inverse.truncate(M);
    for (auto &[name, d] : t.coproduct) {
        h1::Element lhs;
        const h1::Tensor dm = d.truncate(M);
        for (auto &[k, c] : dm.terms()) {
            h1::Element s = h1::multiply(h1::multiply(vi, h1::antipode(k[0]), M), v, M);
            lhs += h1::multiply(s, h1::Element(k[1], c), M);
        }
        lhs = lhs.truncate(M);
        rep.add("m(S~ x 1)D~(" + name + ") = e(" + name + ")", lhs.is_zero(), lhs.str(), "0");
    }
    return rep;
}

}  // namespace udf::engine
