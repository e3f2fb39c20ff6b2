#include "udf/jet.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace udf::jet {

GroupWord reduce(GroupWord w)
{
    GroupWord out;
    for (int g : w) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

GroupWord concat(const GroupWord &a, const GroupWord &b)
{
    GroupWord w = a;
    w.insert(w.end(), b.begin(), b.end());
    return reduce(std::move(w));
}

GroupWord inverse(const GroupWord &w)
{
    GroupWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
    return r;
}

// lowercase letters are generators, uppercase their inverses
std::string word_str(const GroupWord &w)
{
    if (w.empty()) return "id";
    std::string s;
    for (int g : w) s += g > 0 ? char('a' + g - 1) : char('A' - g - 1);
    return s;
}

GroupWord parse_word(const std::string &s)
{
    if (s == "id" || s.empty()) return {};
    GroupWord w;
    for (char ch : s) {
        if (std::islower((unsigned char)ch))
            w.push_back(ch - 'a' + 1);
        else if (std::isupper((unsigned char)ch))
            w.push_back(-(ch - 'A' + 1));
        else
            throw std::invalid_argument("bad group word: " + s);
    }
    return reduce(w);
}

namespace {
struct Table {
    std::mutex mu;
    std::vector<LetterData> letters;
    std::map<LetterData, int> index;
    std::vector<std::string> names;
    std::map<std::string, int> name_index;
    std::map<int, JetPoly> xcache, ycache;
    std::map<std::pair<GroupWord, int>, int> prefix_cache;
    std::map<std::pair<GroupWord, int>, JetPoly> jet_cache;
};
Table &table()
{
    static Table t;
    return t;
}
}  // namespace

int intern(const LetterData &d)
{
    auto &t = table();
    std::lock_guard lk(t.mu);
    auto it = t.index.find(d);
    if (it != t.index.end()) return it->second;
    int id = (int)t.letters.size();
    t.letters.push_back(d);
    t.index.emplace(d, id);
    return id;
}

const LetterData &letter(int id)
{
    auto &t = table();
    std::lock_guard lk(t.mu);
    return t.letters.at(id);
}

int function_name_id(const std::string &name)
{
    auto &t = table();
    std::lock_guard lk(t.mu);
    auto it = t.name_index.find(name);
    if (it != t.name_index.end()) return it->second;
    int id = (int)t.names.size();
    t.names.push_back(name);
    t.name_index.emplace(name, id);
    return id;
}

const std::string &function_name(int id)
{
    auto &t = table();
    std::lock_guard lk(t.mu);
    return t.names.at(id);
}

int function_letter(const std::string &name, int a, int b, const GroupWord &prefix)
{
    return intern(LetterData{reduce(prefix), Kind::Function, function_name_id(name), a, b});
}

int jet_letter(int gen, int n, const GroupWord &prefix)
{
    if (gen <= 0 || n < 1) throw std::invalid_argument("jet letter needs a forward generator and n >= 1");
    return intern(LetterData{reduce(prefix), Kind::Jet, gen, n, 0});
}

static std::string base_str(const LetterData &d)
{
    if (d.kind == Kind::Jet) return "d" + std::to_string(d.a) + "(" + word_str({d.sym}) + ")";
    return "X^" + std::to_string(d.a) + "Y^" + std::to_string(d.b) + " " + function_name(d.sym);
}

std::string letter_str(int id)
{
    LetterData d = letter(id);
    if (d.prefix.empty()) return d.kind == Kind::Jet ? base_str(d) : "(" + base_str(d) + ")";
    return word_str(d.prefix) + "(" + base_str(d) + ")";
}

std::string letter_latex(int id)
{
    LetterData d = letter(id);
    std::string base;
    if (d.kind == Kind::Jet)
        base = "\\delta_{" + std::to_string(d.a) + "}(" + word_str({d.sym}) + ")";
    else
        base = "X^{" + std::to_string(d.a) + "}Y^{" + std::to_string(d.b) + "}" + function_name(d.sym);
    if (d.prefix.empty()) return base;
    return word_str(d.prefix) + "\\left(" + base + "\\right)";
}

JMono mono_mul(const JMono &a, const JMono &b)
{
    JMono r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

JetPoly::JetPoly(const HbarScalar &c)
{
    if (!c.is_zero()) terms_.emplace(JMono{}, c);
}

JetPoly JetPoly::from_letter(int id, const HbarScalar &c) { return from_mono(JMono{{id, 1}}, c); }

JetPoly JetPoly::from_mono(const JMono &m, const HbarScalar &c)
{
    JetPoly p;
    p.add(m, c);
    return p;
}

void JetPoly::add(const JMono &m, const HbarScalar &c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

HbarScalar JetPoly::constant() const
{
    auto it = terms_.find(JMono{});
    return it == terms_.end() ? HbarScalar() : it->second;
}

JetPoly JetPoly::operator-() const
{
    JetPoly r;
    for (auto &[m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

JetPoly &JetPoly::operator+=(const JetPoly &o)
{
    for (auto &[m, c] : o.terms_) add(m, c);
    return *this;
}

JetPoly &JetPoly::operator-=(const JetPoly &o)
{
    for (auto &[m, c] : o.terms_) add(m, -c);
    return *this;
}

JetPoly JetPoly::mul(const JetPoly &a, const JetPoly &b, int max_hbar)
{
    JetPoly r;
    for (auto &[ma, ca] : a.terms_)
        for (auto &[mb, cb] : b.terms_) {
            HbarScalar c = HbarScalar::mul(ca, cb, max_hbar);
            if (!c.is_zero()) r.add(mono_mul(ma, mb), c);
        }
    return r;
}

JetPoly JetPoly::scaled(const HbarScalar &c) const
{
    JetPoly r;
    if (c.is_zero()) return r;
    for (auto &[m, v] : terms_) r.add(m, v * c);
    return r;
}

JetPoly JetPoly::truncate(int max_hbar) const
{
    JetPoly r;
    for (auto &[m, v] : terms_) r.add(m, v.truncate(max_hbar));
    return r;
}

std::optional<int> JetPoly::valuation() const
{
    std::optional<int> v;
    for (auto &[m, c] : terms_) {
        auto e = c.valuation();
        if (e && (!v || *e < *v)) v = e;
    }
    return v;
}

std::optional<int> JetPoly::top() const
{
    std::optional<int> v;
    for (auto &[m, c] : terms_) {
        auto e = c.top();
        if (e && (!v || *e > *v)) v = e;
    }
    return v;
}

static std::string mono_str(const JMono &m, bool latex)
{
    // canonical ordering by letter data so output does not depend on interning order
    std::vector<std::pair<LetterData, std::pair<int, int>>> ls;
    for (auto &[id, e] : m) ls.push_back({letter(id), {id, e}});
    std::sort(ls.begin(), ls.end());
    std::string s;
    for (auto &[d, ie] : ls) {
        if (!s.empty()) s += latex ? " " : "*";
        s += latex ? letter_latex(ie.first) : letter_str(ie.first);
        if (ie.second != 1) s += latex ? "^{" + std::to_string(ie.second) + "}" : "^" + std::to_string(ie.second);
    }
    return s;
}

std::string JetPoly::str() const
{
    if (terms_.empty()) return "0";
    std::vector<std::string> parts;
    for (auto &[m, c] : terms_) {
        std::string ms = mono_str(m, false);
        if (m.empty())
            parts.push_back("(" + c.str() + ")");
        else if (c.is_one())
            parts.push_back(ms);
        else
            parts.push_back("(" + c.str() + ")*" + ms);
    }
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (auto &p : parts) s += (s.empty() ? "" : " + ") + p;
    return s;
}

std::string JetPoly::latex() const
{
    if (terms_.empty()) return "0";
    std::vector<std::string> parts;
    for (auto &[m, c] : terms_) parts.push_back("\\left(" + c.latex() + "\\right)" + mono_str(m, true));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (auto &p : parts) s += (s.empty() ? "" : "+") + p;
    return s;
}

nlohmann::json JetPoly::to_json() const
{
    std::vector<std::pair<std::string, nlohmann::json>> rows;
    for (auto &[m, c] : terms_) rows.push_back({mono_str(m, false), c.to_json()});
    std::sort(rows.begin(), rows.end(), [](auto &x, auto &y) { return x.first < y.first; });
    auto arr = nlohmann::json::array();
    for (auto &[s, c] : rows) arr.push_back({{"mono", s}, {"coeff", c}});
    return arr;
}

static JetPoly prefix_letter_poly(const GroupWord &w, int id)
{
    if (w.empty()) return JetPoly::from_letter(id);
    auto &t = table();
    {
        std::lock_guard lk(t.mu);
        auto it = t.prefix_cache.find({w, id});
        if (it != t.prefix_cache.end()) return JetPoly::from_letter(it->second);
    }
    LetterData d = letter(id);
    d.prefix = concat(w, d.prefix);
    int nid = intern(d);
    std::lock_guard lk(t.mu);
    t.prefix_cache.emplace(std::make_pair(w, id), nid);
    return JetPoly::from_letter(nid);
}

JetPoly prefix(const GroupWord &w, const JetPoly &p)
{
    if (w.empty()) return p;
    JetPoly r;
    for (auto &[m, c] : p.terms()) {
        JMono nm;
        for (auto &[id, e] : m) {
            int nid = prefix_letter_poly(w, id).terms().begin()->first[0].first;
            nm = mono_mul(nm, JMono{{nid, e}});
        }
        r.add(nm, c);
    }
    return r;
}

// Y on the unprefixed base: Y X^a Y^b = X^a Y^{b+1} + a X^a Y^b, Y d_n = n d_n
static JetPoly base_Y(const LetterData &d)
{
    LetterData z = d;
    z.prefix.clear();
    if (d.kind == Kind::Jet) return JetPoly::from_letter(intern(z), HbarScalar(d.a));
    LetterData up = z;
    up.b += 1;
    JetPoly r = JetPoly::from_letter(intern(up));
    if (d.a) r += JetPoly::from_letter(intern(z), HbarScalar(d.a));
    return r;
}

static JetPoly base_X(const LetterData &d)
{
    LetterData z = d;
    z.prefix.clear();
    z.a += 1;
    return JetPoly::from_letter(intern(z));
}

JetPoly letter_Y(int id)
{
    auto &t = table();
    {
        std::lock_guard lk(t.mu);
        auto it = t.ycache.find(id);
        if (it != t.ycache.end()) return it->second;
    }
    LetterData d = letter(id);
    JetPoly r = prefix(d.prefix, base_Y(d));
    std::lock_guard lk(t.mu);
    t.ycache.emplace(id, r);
    return r;
}

JetPoly letter_X(int id)
{
    auto &t = table();
    {
        std::lock_guard lk(t.mu);
        auto it = t.xcache.find(id);
        if (it != t.xcache.end()) return it->second;
    }
    LetterData d = letter(id);
    // X(w(L)) = w(X L) + delta_1(w) w(Y L)
    JetPoly r = prefix(d.prefix, base_X(d));
    if (!d.prefix.empty()) r += jet_of_product(d.prefix, 1) * prefix(d.prefix, base_Y(d));
    std::lock_guard lk(t.mu);
    t.xcache.emplace(id, r);
    return r;
}

static JetPoly derivation(const JetPoly &p, JetPoly (*on_letter)(int))
{
    JetPoly r;
    for (auto &[m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            JMono rest = m;
            if (--rest[i].second == 0) rest.erase(rest.begin() + i);
            HbarScalar cc = c.scaled(GaussianRational(m[i].second));
            JetPoly img = on_letter(m[i].first);
            for (auto &[lm, lc] : img.terms()) r.add(mono_mul(rest, lm), cc * lc);
        }
    }
    return r;
}

JetPoly apply_X(const JetPoly &p) { return derivation(p, letter_X); }
JetPoly apply_Y(const JetPoly &p) { return derivation(p, letter_Y); }

JetPoly apply_Y_shift(const JetPoly &p, const GaussianRational &c)
{
    return apply_Y(p) - p.scaled(HbarScalar(c));
}

static JetPoly delta1_generator(int g)
{
    if (g > 0) return JetPoly::from_letter(jet_letter(g, 1));
    // a(delta_1(a^-1)) = -delta_1(a), so delta_1(a^-1) = -a^-1(delta_1(a))
    return JetPoly::from_letter(jet_letter(-g, 1, {g}), HbarScalar(-1));
}

static JetPoly delta1_expand(const GroupWord &w)
{
    // delta_1(g w') = delta_1(g) + g(delta_1(w'))
    JetPoly r;
    GroupWord tail;
    for (int k = (int)w.size() - 1; k >= 0; --k) {
        r = delta1_generator(w[k]) + prefix({w[k]}, r);
    }
    return r;
}

JetPoly jet_of_unreduced(const GroupWord &w, int n)
{
    JetPoly r = delta1_expand(w);
    for (int k = 1; k < n; ++k) r = apply_X(r);
    return r;
}

JetPoly jet_of_product(const GroupWord &w0, int n, JetVariant v)
{
    if (v == JetVariant::Delta2Prime) {
        JetPoly d1 = jet_of_product(w0, 1);
        return jet_of_product(w0, 2) - (d1 * d1).scaled(HbarScalar::frac(1, 2));
    }
    if (n < 1) throw std::invalid_argument("jet order must be >= 1");
    GroupWord w = reduce(w0);
    if (w.empty()) return {};
    auto &t = table();
    {
        std::lock_guard lk(t.mu);
        auto it = t.jet_cache.find({w, n});
        if (it != t.jet_cache.end()) return it->second;
    }
    JetPoly r = n == 1 ? delta1_expand(w) : apply_X(jet_of_product(w, n - 1));
    std::lock_guard lk(t.mu);
    t.jet_cache.emplace(std::make_pair(w, n), r);
    return r;
}

CrossedElement::CrossedElement(const JetPoly &p, const GroupWord &w) { add(w, p); }

CrossedElement CrossedElement::function(const std::string &name, const GroupWord &w)
{
    return CrossedElement(JetPoly::from_letter(function_letter(name)), w);
}

void CrossedElement::add(const GroupWord &w0, const JetPoly &p)
{
    if (p.is_zero()) return;
    GroupWord w = reduce(w0);
    auto [it, fresh] = terms_.try_emplace(w, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CrossedElement &CrossedElement::operator+=(const CrossedElement &o)
{
    for (auto &[w, p] : o.terms_) add(w, p);
    return *this;
}

CrossedElement &CrossedElement::operator-=(const CrossedElement &o)
{
    for (auto &[w, p] : o.terms_) add(w, -p);
    return *this;
}

CrossedElement CrossedElement::scaled(const HbarScalar &c) const
{
    CrossedElement r;
    for (auto &[w, p] : terms_) r.add(w, p.scaled(c));
    return r;
}

CrossedElement CrossedElement::truncate(int N) const
{
    CrossedElement r;
    for (auto &[w, p] : terms_) r.add(w, p.truncate(N));
    return r;
}

std::string CrossedElement::str() const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (auto &[w, p] : terms_) {
        if (!s.empty()) s += "\n";
        s += "[" + p.str() + "] " + word_str(w);
    }
    return s;
}

JetPoly act_on_poly(const h1::Monomial &h, const JetPoly &p, const GroupWord &w)
{
    JetPoly r = p;
    for (int i = 0; i < h.y; ++i) r = apply_Y(r);
    for (int i = 0; i < h.x; ++i) r = apply_X(r);
    for (auto &[n, e] : h.d) {
        JetPoly dn = jet_of_product(w, n);
        for (int i = 0; i < e; ++i) r = r * dn;
    }
    return r;
}

CrossedElement act(const h1::Monomial &h, const CrossedElement &e)
{
    CrossedElement r;
    for (auto &[w, p] : e.terms()) r.add(w, act_on_poly(h, p, w));
    return r;
}

CrossedElement act(const h1::Element &h, const CrossedElement &e)
{
    CrossedElement r;
    for (auto &[m, c] : h.terms()) r += act(m, e).scaled(c);
    return r;
}

CrossedElement cross_multiply(const CrossedElement &a, const CrossedElement &b, int N)
{
    CrossedElement r;
    for (auto &[wa, pa] : a.terms())
        for (auto &[wb, pb] : b.terms()) r.add(concat(wa, wb), JetPoly::mul(pa, prefix(wa, pb), N));
    return r;
}

static int rank_of(std::vector<std::vector<GaussianRational>> m)
{
    int rank = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < (int)m.size(); ++c) {
        int piv = -1;
        for (int r = rank; r < (int)m.size(); ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        GaussianRational inv = m[rank][c].inverse();
        for (int r = rank + 1; r < (int)m.size(); ++r) {
            if (m[r][c].is_zero()) continue;
            GaussianRational f = m[r][c] * inv;
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

FaithfulnessReport faithfulness_rank(int d)
{
    if (d > 5) throw std::invalid_argument("faithfulness_rank supports d <= 5");
    auto monos = h1::monomials_up_to(d);
    std::vector<CrossedElement> family;
    for (const char *w : {"id", "a", "ab"})
        for (int a = 0; a <= std::min(d, 1); ++a)
            for (int b = 0; b <= std::min(d, 1); ++b)
                family.emplace_back(JetPoly::from_letter(function_letter("f", a, b)), parse_word(w));
    std::map<std::pair<GroupWord, JMono>, int> col;
    std::vector<std::vector<std::pair<int, GaussianRational>>> rows;
    for (auto &m : monos) {
        std::vector<std::pair<int, GaussianRational>> row;
        for (std::size_t k = 0; k < family.size(); ++k) {
            auto img = act(m, family[k]);
            for (auto &[w, p] : img.terms())
                for (auto &[jm, c] : p.terms()) {
                    GroupWord tagged = w;
                    tagged.insert(tagged.begin(), 1000 + (int)k);
                    auto key = std::make_pair(tagged, jm);
                    auto it = col.try_emplace(key, (int)col.size()).first;
                    row.emplace_back(it->second, c.coeff(0));
                }
        }
        rows.push_back(row);
    }
    std::vector<std::vector<GaussianRational>> dense(rows.size(), std::vector<GaussianRational>(col.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto &[c, v] : rows[r]) dense[r][c] += v;
    return FaithfulnessReport{d, (int)monos.size(), rank_of(dense)};
}

}  // namespace udf::jet
