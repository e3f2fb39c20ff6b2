#include "udf/h1.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace udf::h1 {

int Monomial::delta_weight() const
{
    int w = 0;
    for (auto &[n, e] : d) w += n * e;
    return w;
}

int Monomial::degree() const { return delta_weight() + x + y; }

void Monomial::add_delta(int n, int e)
{
    for (auto it = d.begin(); it != d.end(); ++it) {
        if (it->first == n) {
            it->second += e;
            if (it->second == 0) d.erase(it);
            return;
        }
        if (it->first > n) {
            d.insert(it, {n, e});
            return;
        }
    }
    d.emplace_back(n, e);
}

static std::string pw(const std::string &s, int e)
{
    return e == 1 ? s : s + "^" + std::to_string(e);
}

std::string Monomial::str() const
{
    if (is_one()) return "1";
    std::string s;
    auto push = [&](const std::string &t) {
        if (!s.empty()) s += " ";
        s += t;
    };
    for (auto &[n, e] : d) push(pw("d" + std::to_string(n), e));
    if (x) push(pw("X", x));
    if (y) push(pw("Y", y));
    return s;
}

std::string Monomial::latex() const
{
    if (is_one()) return "1";
    std::string s;
    auto lp = [](const std::string &t, int e) { return e == 1 ? t : t + "^{" + std::to_string(e) + "}"; };
    for (auto &[n, e] : d) s += lp("\\delta_{" + std::to_string(n) + "}", e);
    if (x) s += lp("X", x);
    if (y) s += lp("Y", y);
    return s;
}

nlohmann::json Monomial::to_json() const
{
    auto ds = nlohmann::json::array();
    for (auto &[n, e] : d) ds.push_back({n, e});
    return {{"d", ds}, {"x", x}, {"y", y}};
}

Monomial Monomial::from_json(const nlohmann::json &j)
{
    Monomial m;
    for (auto &p : j.at("d")) m.add_delta(p[0].get<int>(), p[1].get<int>());
    m.x = j.at("x").get<int>();
    m.y = j.at("y").get<int>();
    return m;
}

Element::Element(const HbarScalar &c)
{
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Element::Element(const Monomial &m, const HbarScalar &c)
{
    if (!c.is_zero()) terms_.emplace(m, c);
}

Element Element::X()
{
    Monomial m;
    m.x = 1;
    return Element(m);
}

Element Element::Y()
{
    Monomial m;
    m.y = 1;
    return Element(m);
}

Element Element::delta(int n)
{
    Monomial m;
    m.add_delta(n);
    return Element(m);
}

Element Element::delta2p()
{
    Monomial d11;
    d11.add_delta(1, 2);
    return delta(2) + Element(d11, HbarScalar::frac(-1, 2));
}

Element Element::Y_plus(const GaussianRational &c) { return Y() + Element(HbarScalar(c)); }

void Element::add(const Monomial &m, const HbarScalar &c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Element Element::operator-() const
{
    Element r;
    for (auto &[m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Element &Element::operator+=(const Element &o)
{
    for (auto &[m, c] : o.terms_) add(m, c);
    return *this;
}

Element &Element::operator-=(const Element &o)
{
    for (auto &[m, c] : o.terms_) add(m, -c);
    return *this;
}

Element Element::scaled(const HbarScalar &c) const
{
    Element r;
    for (auto &[m, v] : terms_) r.add(m, v * c);
    return r;
}

Element Element::truncate(int N) const
{
    Element r;
    for (auto &[m, c] : terms_) r.add(m, c.truncate(N));
    return r;
}

HbarScalar Element::coeff(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? HbarScalar() : it->second;
}

int Element::max_degree() const
{
    int d = 0;
    for (auto &[m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::string Element::str() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (auto &[m, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (m.is_one()) {
            s += "(" + c.str() + ")";
            continue;
        }
        if (!c.is_one()) s += "(" + c.str() + ") ";
        s += m.str();
    }
    return s;
}

std::string Element::latex() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (auto &[m, c] : terms_) {
        if (!s.empty()) s += "+";
        if (m.is_one()) {
            s += "\\left(" + c.latex() + "\\right)";
            continue;
        }
        if (!c.is_one()) s += "\\left(" + c.latex() + "\\right)";
        s += m.latex();
    }
    return s;
}

nlohmann::json Element::to_json() const
{
    auto arr = nlohmann::json::array();
    for (auto &[m, c] : terms_) arr.push_back({{"mono", m.to_json()}, {"coeff", c.to_json()}});
    return arr;
}

Element Element::from_json(const nlohmann::json &j)
{
    Element e;
    for (auto &t : j) e.add(Monomial::from_json(t.at("mono")), HbarScalar::from_json(t.at("coeff")));
    return e;
}

// Normal-ordering rules used below. Each left multiplication pushes the new
// generator to its slot: a delta joins the commuting delta block, X passes the
// delta block leaving [X,d_n] = d_{n+1} remainders of equal X power, and Y
// passes deltas and X's picking up the weight. Every step either lowers the
// number of generators left of their slot or keeps it and lowers x-power, so
// the rewriting terminates.

Element left_delta(int n, const Element &e)
{
    Element r;
    for (auto &[m, c] : e.terms()) {
        Monomial k = m;
        k.add_delta(n);
        r.add(k, c);
    }
    return r;
}

Element left_X(const Element &e)
{
    Element r;
    for (auto &[m, c] : e.terms()) {
        Monomial k = m;
        k.x += 1;
        r.add(k, c);
        for (auto &[n, ex] : m.d) {
            Monomial j = m;
            j.add_delta(n, -1);
            j.add_delta(n + 1, 1);
            r.add(j, c.scaled(GaussianRational(ex)));
        }
    }
    return r;
}

Element left_Y(const Element &e)
{
    Element r;
    for (auto &[m, c] : e.terms()) {
        Monomial k = m;
        k.y += 1;
        r.add(k, c);
        int w = m.delta_weight() + m.x;
        if (w) r.add(m, c.scaled(GaussianRational(w)));
    }
    return r;
}

static Element apply_left(const Monomial &a, Element t)
{
    for (int i = 0; i < a.y; ++i) t = left_Y(t);
    for (int i = 0; i < a.x; ++i) t = left_X(t);
    for (auto &[n, e] : a.d)
        for (int i = 0; i < e; ++i) t = left_delta(n, t);
    return t;
}

namespace {
std::mutex prod_mu;
std::map<std::pair<Monomial, Monomial>, Element> prod_cache;
std::mutex cop_mu;
std::map<Monomial, Tensor> cop_cache;
std::mutex s_mu;
std::map<Monomial, Element> s_cache;
}  // namespace

Element monomial_product(const Monomial &a, const Monomial &b)
{
    if (a.is_one()) return Element(b);
    if (b.is_one()) return Element(a);
    if (a.x == 0 && a.y == 0) {
        Monomial k = b;
        for (auto &[n, e] : a.d) k.add_delta(n, e);
        return Element(k);
    }
    auto key = std::make_pair(a, b);
    {
        std::lock_guard lk(prod_mu);
        auto it = prod_cache.find(key);
        if (it != prod_cache.end()) return it->second;
    }
    Element r = apply_left(a, Element(b));
    std::lock_guard lk(prod_mu);
    prod_cache.emplace(key, r);
    return r;
}

Element multiply(const Element &a, const Element &b, int N)
{
    Element r;
    for (auto &[ma, ca] : a.terms())
        for (auto &[mb, cb] : b.terms()) {
            HbarScalar c = HbarScalar::mul(ca, cb, N);
            if (c.is_zero()) continue;
            Element prod = monomial_product(ma, mb);
            for (auto &[m, k] : prod.terms()) r.add(m, HbarScalar::mul(c, k, N));
        }
    return r;
}

Element operator*(const Element &a, const Element &b) { return multiply(a, b); }

Element pow(const Element &a, int k)
{
    Element r = Element::one();
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

Tensor Tensor::unit(int rank)
{
    Tensor t(rank);
    t.terms_.emplace(Key(rank), HbarScalar(1));
    return t;
}

Tensor Tensor::pure(const Element &a, const Element &b)
{
    Tensor t(2);
    for (auto &[ma, ca] : a.terms())
        for (auto &[mb, cb] : b.terms()) t.add({ma, mb}, ca * cb);
    return t;
}

Tensor Tensor::pure3(const Element &a, const Element &b, const Element &c)
{
    Tensor t(3);
    for (auto &[ma, ca] : a.terms())
        for (auto &[mb, cb] : b.terms())
            for (auto &[mc, cc] : c.terms()) t.add({ma, mb, mc}, ca * cb * cc);
    return t;
}

void Tensor::add(const Key &k, const HbarScalar &c)
{
    if (c.is_zero()) return;
    if ((int)k.size() != rank_) throw std::invalid_argument("tensor rank mismatch");
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Tensor &Tensor::operator+=(const Tensor &o)
{
    if (o.rank_ != rank_) throw std::invalid_argument("tensor rank mismatch");
    for (auto &[k, c] : o.terms_) add(k, c);
    return *this;
}

Tensor &Tensor::operator-=(const Tensor &o)
{
    if (o.rank_ != rank_) throw std::invalid_argument("tensor rank mismatch");
    for (auto &[k, c] : o.terms_) add(k, -c);
    return *this;
}

Tensor Tensor::operator-() const
{
    Tensor t(rank_);
    for (auto &[k, c] : terms_) t.terms_.emplace(k, -c);
    return t;
}

Tensor Tensor::scaled(const HbarScalar &c) const
{
    Tensor t(rank_);
    for (auto &[k, v] : terms_) t.add(k, v * c);
    return t;
}

Tensor Tensor::truncate(int N) const
{
    Tensor t(rank_);
    for (auto &[k, v] : terms_) t.add(k, v.truncate(N));
    return t;
}

Tensor Tensor::order_part(int k) const
{
    Tensor t(rank_);
    for (auto &[key, v] : terms_) {
        auto c = v.coeff(k);
        if (!c.is_zero()) t.add(key, HbarScalar(c, k));
    }
    return t;
}

std::string Tensor::str() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (auto &[k, c] : terms_) {
        if (!s.empty()) s += "\n";
        s += "(" + c.str() + ") ";
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) s += " (x) ";
            s += k[i].str();
        }
    }
    return s;
}

std::string Tensor::latex() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (auto &[k, c] : terms_) {
        if (!s.empty()) s += "+";
        s += "\\left(" + c.latex() + "\\right)";
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) s += "\\otimes ";
            s += k[i].latex();
        }
    }
    return s;
}

nlohmann::json Tensor::to_json() const
{
    auto arr = nlohmann::json::array();
    for (auto &[k, c] : terms_) {
        auto legs = nlohmann::json::array();
        for (auto &m : k) legs.push_back(m.to_json());
        arr.push_back({{"legs", legs}, {"coeff", c.to_json()}});
    }
    return arr;
}

Tensor Tensor::from_json(const nlohmann::json &j, int rank)
{
    Tensor t(rank);
    for (auto &e : j) {
        Key k;
        for (auto &m : e.at("legs")) k.push_back(Monomial::from_json(m));
        t.add(k, HbarScalar::from_json(e.at("coeff")));
    }
    return t;
}

Tensor compose(const Tensor &s, const Tensor &t, int N)
{
    if (s.rank() != t.rank()) throw std::invalid_argument("tensor rank mismatch");
    int r = s.rank();
    Tensor out(r);
    for (auto &[ks, cs] : s.terms())
        for (auto &[kt, ct] : t.terms()) {
            HbarScalar c = HbarScalar::mul(cs, ct, N);
            if (c.is_zero()) continue;
            // expand leg products and take the tensor product of the results
            std::vector<std::pair<Tensor::Key, HbarScalar>> partial{{{}, c}};
            for (int i = 0; i < r; ++i) {
                Element leg = monomial_product(ks[i], kt[i]);
                std::vector<std::pair<Tensor::Key, HbarScalar>> next;
                next.reserve(partial.size() * leg.terms().size());
                for (auto &[pk, pc] : partial)
                    for (auto &[m, lc] : leg.terms()) {
                        HbarScalar v = HbarScalar::mul(pc, lc, N);
                        if (v.is_zero()) continue;
                        auto key = pk;
                        key.push_back(m);
                        next.emplace_back(std::move(key), std::move(v));
                    }
                partial = std::move(next);
            }
            for (auto &[k, v] : partial) out.add(k, v);
        }
    return out;
}

static Tensor delta_coproduct(int n)
{
    // Delta(d1) = d1 (x) 1 + 1 (x) d1, Delta(d_{n+1}) = [Delta X, Delta d_n]
    Monomial m;
    m.add_delta(n);
    {
        std::lock_guard lk(cop_mu);
        auto it = cop_cache.find(m);
        if (it != cop_cache.end()) return it->second;
    }
    Tensor r(2);
    if (n == 1) {
        r = Tensor::pure(Element::delta(1), Element::one()) + Tensor::pure(Element::one(), Element::delta(1));
    } else {
        Tensor dx = coproduct(Monomial{{}, 1, 0});
        Tensor dn = delta_coproduct(n - 1);
        r = compose(dx, dn) - compose(dn, dx);
    }
    std::lock_guard lk(cop_mu);
    cop_cache.emplace(m, r);
    return r;
}

Tensor coproduct(const Monomial &m)
{
    if (m.is_one()) return Tensor::unit(2);
    if (m.d.empty() && m.x == 1 && m.y == 0) {
        return Tensor::pure(Element::X(), Element::one()) + Tensor::pure(Element::one(), Element::X()) +
               Tensor::pure(Element::delta(1), Element::Y());
    }
    if (m.d.empty() && m.x == 0 && m.y == 1)
        return Tensor::pure(Element::Y(), Element::one()) + Tensor::pure(Element::one(), Element::Y());
    if (m.d.size() == 1 && m.d[0].second == 1 && m.x == 0 && m.y == 0) return delta_coproduct(m.d[0].first);
    {
        std::lock_guard lk(cop_mu);
        auto it = cop_cache.find(m);
        if (it != cop_cache.end()) return it->second;
    }
    // peel the leftmost generator: m = g * rest
    Monomial g, rest = m;
    if (!m.d.empty()) {
        g.add_delta(m.d[0].first);
        rest.add_delta(m.d[0].first, -1);
    } else if (m.x) {
        g.x = 1;
        rest.x -= 1;
    } else {
        g.y = 1;
        rest.y -= 1;
    }
    Tensor r = compose(coproduct(g), coproduct(rest));
    std::lock_guard lk(cop_mu);
    cop_cache.emplace(m, r);
    return r;
}

Tensor coproduct(const Element &a)
{
    Tensor r(2);
    for (auto &[m, c] : a.terms()) r += coproduct(m).scaled(c);
    return r;
}

HbarScalar counit(const Element &a) { return a.coeff(Monomial{}); }

static Element delta_antipode(int n)
{
    if (n == 1) return -Element::delta(1);
    // S(d_{n}) = S([X, d_{n-1}]) = [S(d_{n-1}), S(X)]
    Element sx = antipode(Monomial{{}, 1, 0});
    Element sd = delta_antipode(n - 1);
    return sd * sx - sx * sd;
}

Element antipode(const Monomial &m)
{
    if (m.is_one()) return Element::one();
    {
        std::lock_guard lk(s_mu);
        auto it = s_cache.find(m);
        if (it != s_cache.end()) return it->second;
    }
    Element r;
    if (m.d.empty() && m.x == 1 && m.y == 0) {
        Monomial d1y;
        d1y.add_delta(1);
        d1y.y = 1;
        r = -Element::X() + Element(d1y);
    } else if (m.d.empty() && m.x == 0 && m.y == 1) {
        r = -Element::Y();
    } else if (m.d.size() == 1 && m.d[0].second == 1 && m.x == 0 && m.y == 0) {
        r = delta_antipode(m.d[0].first);
    } else {
        // S(g * rest) = S(rest) S(g)
        Monomial g, rest = m;
        if (!m.d.empty()) {
            g.add_delta(m.d[0].first);
            rest.add_delta(m.d[0].first, -1);
        } else if (m.x) {
            g.x = 1;
            rest.x -= 1;
        } else {
            g.y = 1;
            rest.y -= 1;
        }
        r = antipode(rest) * antipode(g);
    }
    std::lock_guard lk(s_mu);
    s_cache.emplace(m, r);
    return r;
}

Element antipode(const Element &a)
{
    Element r;
    for (auto &[m, c] : a.terms()) r += antipode(m).scaled(c);
    return r;
}

Tensor coproduct_leg(const Tensor &t, int leg)
{
    if (t.rank() != 2) throw std::invalid_argument("coproduct_leg needs rank 2");
    Tensor r(3);
    for (auto &[k, c] : t.terms()) {
        Tensor d = coproduct(k[leg == 1 ? 0 : 1]);
        for (auto &[dk, dc] : d.terms()) {
            if (leg == 1)
                r.add({dk[0], dk[1], k[1]}, c * dc);
            else
                r.add({k[0], dk[0], dk[1]}, c * dc);
        }
    }
    return r;
}

Element counit_leg(const Tensor &t, int leg)
{
    Element r;
    for (auto &[k, c] : t.terms()) {
        const Monomial &killed = k[leg == 1 ? 0 : 1];
        if (killed.is_one()) r.add(k[leg == 1 ? 1 : 0], c);
    }
    return r;
}

Element multiply_antipode_left(const Tensor &t, int N)
{
    Element r;
    for (auto &[k, c] : t.terms()) r += multiply(antipode(k[0]), Element(k[1], c), N);
    return r;
}

Tensor embed3(const Tensor &t, int a, int b)
{
    Tensor r(3);
    for (auto &[k, c] : t.terms()) {
        Tensor::Key key(3);
        key[a] = k[0];
        key[b] = k[1];
        r.add(key, c);
    }
    return r;
}

static void gen_deltas(int budget, int minn, std::vector<std::pair<int, int>> &cur,
                       std::vector<std::vector<std::pair<int, int>>> &out)
{
    out.push_back(cur);
    for (int n = minn; n <= budget; ++n)
        for (int e = 1; n * e <= budget; ++e) {
            cur.emplace_back(n, e);
            gen_deltas(budget - n * e, n + 1, cur, out);
            cur.pop_back();
        }
}

std::vector<Monomial> monomials_up_to(int d)
{
    std::vector<std::vector<std::pair<int, int>>> ds;
    std::vector<std::pair<int, int>> cur;
    gen_deltas(d, 1, cur, ds);
    std::vector<Monomial> out;
    for (auto &dd : ds) {
        int w = 0;
        for (auto &[n, e] : dd) w += n * e;
        for (int x = 0; w + x <= d; ++x)
            for (int y = 0; w + x + y <= d; ++y) out.push_back(Monomial{dd, x, y});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace udf::h1
