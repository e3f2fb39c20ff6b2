#include "udf/scalars.hpp"

#include <stdexcept>

namespace udf {

GaussianRational &GaussianRational::operator*=(const GaussianRational &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational GaussianRational::inverse() const
{
    if (is_zero()) throw std::domain_error("non-invertible scalar");
    mpq_class n = re_ * re_ + im_ * im_;
    return GaussianRational(re_ / n, -im_ / n);
}

static std::string qstr(const mpq_class &q) { return q.get_str(); }

std::string GaussianRational::str() const
{
    if (sgn(im_) == 0) return qstr(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = qstr(im_) + "i";
    if (sgn(re_) == 0) return imag;
    if (sgn(im_) > 0) return "(" + qstr(re_) + "+" + imag + ")";
    return "(" + qstr(re_) + imag + ")";
}

GaussianRational HbarScalar::coeff(int e) const
{
    for (auto &[k, c] : terms_)
        if (k == e) return c;
    return GaussianRational();
}

HbarScalar HbarScalar::operator-() const
{
    HbarScalar r = *this;
    for (auto &t : r.terms_) t.second = -t.second;
    return r;
}

HbarScalar &HbarScalar::operator+=(const HbarScalar &o)
{
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            GaussianRational c = terms_[i].second + o.terms_[j].second;
            if (!c.is_zero()) out.emplace_back(terms_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

HbarScalar HbarScalar::mul(const HbarScalar &a, const HbarScalar &b, int max_exp)
{
    HbarScalar r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        int e = a.terms_[0].first + b.terms_[0].first;
        if (e <= max_exp) r.terms_.emplace_back(e, a.terms_[0].second * b.terms_[0].second);
        return r;
    }
    int lo = a.terms_.front().first + b.terms_.front().first;
    int hi = std::min(a.terms_.back().first + b.terms_.back().first, max_exp);
    if (hi < lo) return r;
    std::vector<GaussianRational> acc(hi - lo + 1);
    std::vector<char> used(hi - lo + 1, 0);
    for (auto &[ea, ca] : a.terms_)
        for (auto &[eb, cb] : b.terms_) {
            int e = ea + eb;
            if (e > hi) break;
            acc[e - lo] += ca * cb;
            used[e - lo] = 1;
        }
    for (int k = 0; k <= hi - lo; ++k)
        if (used[k] && !acc[k].is_zero()) r.terms_.emplace_back(lo + k, std::move(acc[k]));
    return r;
}

HbarScalar HbarScalar::scaled(const GaussianRational &c) const
{
    if (c.is_zero()) return {};
    HbarScalar r = *this;
    for (auto &t : r.terms_) t.second *= c;
    return r;
}

HbarScalar HbarScalar::shifted(int de) const
{
    HbarScalar r = *this;
    for (auto &t : r.terms_) t.first += de;
    return r;
}

HbarScalar HbarScalar::truncate(int N) const
{
    HbarScalar r;
    for (auto &t : terms_)
        if (t.first <= N) r.terms_.push_back(t);
    return r;
}

HbarScalar HbarScalar::truncate_below(int lo) const
{
    HbarScalar r;
    for (auto &t : terms_)
        if (t.first >= lo) r.terms_.push_back(t);
    return r;
}

HbarScalar HbarScalar::inverse() const
{
    if (terms_.size() != 1) throw std::domain_error("non-invertible scalar");
    return HbarScalar(terms_[0].second.inverse(), -terms_[0].first);
}

bool operator<(const HbarScalar &a, const HbarScalar &b)
{
    return a.terms_ < b.terms_;
}

std::string HbarScalar::str() const
{
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto &[e, c] : terms_) {
        std::string cs = c.str();
        if (!first) s += (cs[0] == '-') ? " " : " + ";
        first = false;
        if (e == 0) {
            s += cs;
            continue;
        }
        if (c.is_one())
            cs = "";
        else if (c == GaussianRational(-1))
            cs = "-";
        else
            cs += "*";
        s += cs + (e == 1 ? std::string("h") : "h^" + std::to_string(e));
    }
    return s;
}

static std::string qlatex(const mpq_class &q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    std::string sign = sgn(q) < 0 ? "-" : "";
    mpz_class n = abs(q.get_num());
    return sign + "\\frac{" + n.get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string HbarScalar::latex() const
{
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto &[e, c] : terms_) {
        std::string cs;
        if (sgn(c.im()) == 0)
            cs = qlatex(c.re());
        else if (sgn(c.re()) == 0)
            cs = (c.im() == 1 ? std::string("") : c.im() == -1 ? std::string("-") : qlatex(c.im())) + "i";
        else
            cs = "(" + qlatex(c.re()) + (sgn(c.im()) > 0 ? "+" : "") + qlatex(c.im()) + "i)";
        if (!first && cs[0] != '-') s += "+";
        first = false;
        if (e == 0) {
            s += cs;
            continue;
        }
        if (cs == "1") cs = "";
        if (cs == "-1") cs = "-";
        s += cs + "\\hbar" + (e == 1 ? std::string("") : "^{" + std::to_string(e) + "}");
    }
    return s;
}

nlohmann::json HbarScalar::to_json() const
{
    auto arr = nlohmann::json::array();
    for (auto &[e, c] : terms_)
        arr.push_back({e, c.re().get_num().get_str(), c.re().get_den().get_str(), c.im().get_num().get_str(),
                       c.im().get_den().get_str()});
    return arr;
}

HbarScalar HbarScalar::from_json(const nlohmann::json &j)
{
    HbarScalar r;
    for (auto &q : j) {
        if (!q.is_array() || q.size() != 5) throw std::runtime_error("bad scalar entry");
        mpq_class re(mpz_class(q[1].get<std::string>()), mpz_class(q[2].get<std::string>()));
        mpq_class im(mpz_class(q[3].get<std::string>()), mpz_class(q[4].get<std::string>()));
        re.canonicalize();
        im.canonicalize();
        r += HbarScalar(GaussianRational(re, im), q[0].get<int>());
    }
    return r;
}

}  // namespace udf
