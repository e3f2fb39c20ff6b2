#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "udf/h1.hpp"
#include "udf/scalars.hpp"

namespace udf::jet {

// generator k > 0 is forward, -k its formal inverse; always kept reduced
using GroupWord = std::vector<int>;

GroupWord reduce(GroupWord w);
GroupWord concat(const GroupWord &a, const GroupWord &b);
GroupWord inverse(const GroupWord &w);
std::string word_str(const GroupWord &w);
// lowercase generator, uppercase inverse: "ab", "aB", "id"
GroupWord parse_word(const std::string &s);

enum class Kind { Function, Jet };

struct LetterData {
    GroupWord prefix;
    Kind kind = Kind::Function;
    int sym = 0;  // function-name id or forward generator
    int a = 0;    // X power, or jet order n
    int b = 0;    // Y power (functions only)

    friend auto operator<=>(const LetterData &, const LetterData &) = default;
    friend bool operator==(const LetterData &, const LetterData &) = default;
};

int intern(const LetterData &d);
const LetterData &letter(int id);
int function_name_id(const std::string &name);
const std::string &function_name(int id);
std::string letter_str(int id);
std::string letter_latex(int id);

int function_letter(const std::string &name, int a = 0, int b = 0, const GroupWord &prefix = {});
int jet_letter(int gen, int n, const GroupWord &prefix = {});

using JMono = std::vector<std::pair<int, int>>;  // (letter id, exponent), ids ascending

class JetPoly {
public:
    using Map = std::map<JMono, HbarScalar>;

    JetPoly() = default;
    JetPoly(const HbarScalar &c);
    static JetPoly from_letter(int id, const HbarScalar &c = HbarScalar(1));
    static JetPoly from_mono(const JMono &m, const HbarScalar &c);

    const Map &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add(const JMono &m, const HbarScalar &c);
    HbarScalar constant() const;

    JetPoly operator-() const;
    JetPoly &operator+=(const JetPoly &o);
    JetPoly &operator-=(const JetPoly &o);
    friend JetPoly operator+(JetPoly a, const JetPoly &b) { return a += b; }
    friend JetPoly operator-(JetPoly a, const JetPoly &b) { return a -= b; }
    friend JetPoly operator*(const JetPoly &a, const JetPoly &b) { return mul(a, b); }
    static JetPoly mul(const JetPoly &a, const JetPoly &b, int max_hbar = 1 << 29);
    JetPoly scaled(const HbarScalar &c) const;
    JetPoly truncate(int max_hbar) const;
    std::optional<int> valuation() const;
    std::optional<int> top() const;

    friend bool operator==(const JetPoly &a, const JetPoly &b) { return a.terms_ == b.terms_; }
    std::string str() const;
    std::string latex() const;
    nlohmann::json to_json() const;

private:
    Map terms_;
};

JMono mono_mul(const JMono &a, const JMono &b);

// X and Y acting as derivations on the commuting letters
JetPoly apply_X(const JetPoly &p);
JetPoly apply_Y(const JetPoly &p);
// Y - c
JetPoly apply_Y_shift(const JetPoly &p, const GaussianRational &c);
JetPoly letter_X(int id);
JetPoly letter_Y(int id);
// w(p): every letter gets w prepended to its prefix
JetPoly prefix(const GroupWord &w, const JetPoly &p);

enum class JetVariant { Delta, Delta2Prime };
// delta_n(w) (or delta_2'(w)) as a polynomial in jets of forward generators
JetPoly jet_of_product(const GroupWord &w, int n, JetVariant v = JetVariant::Delta);
// the same quantity expanded letter by letter without reducing w first
JetPoly jet_of_unreduced(const GroupWord &w, int n);

class CrossedElement {
public:
    using Map = std::map<GroupWord, JetPoly>;

    CrossedElement() = default;
    CrossedElement(const JetPoly &p, const GroupWord &w);
    static CrossedElement function(const std::string &name, const GroupWord &w);

    const Map &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const GroupWord &w, const JetPoly &p);

    CrossedElement &operator+=(const CrossedElement &o);
    CrossedElement &operator-=(const CrossedElement &o);
    friend CrossedElement operator+(CrossedElement a, const CrossedElement &b) { return a += b; }
    friend CrossedElement operator-(CrossedElement a, const CrossedElement &b) { return a -= b; }
    CrossedElement scaled(const HbarScalar &c) const;
    CrossedElement truncate(int N) const;

    friend bool operator==(const CrossedElement &a, const CrossedElement &b) { return a.terms_ == b.terms_; }
    std::string str() const;

private:
    Map terms_;
};

CrossedElement act(const h1::Element &h, const CrossedElement &e);
CrossedElement act(const h1::Monomial &h, const CrossedElement &e);
JetPoly act_on_poly(const h1::Monomial &h, const JetPoly &p, const GroupWord &w);
CrossedElement cross_multiply(const CrossedElement &a, const CrossedElement &b, int N = 1 << 29);

struct FaithfulnessReport {
    int degree = 0;
    int monomials = 0;
    int rank = 0;
    bool full_rank() const { return rank == monomials; }
};
FaithfulnessReport faithfulness_rank(int d);

}  // namespace udf::jet
