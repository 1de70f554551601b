#include "starkit/groupring.hpp"

#include <json.hpp>
#include <sstream>

namespace starkit {

namespace {

std::string coeff_str(const Int& c) { return c.get_str(); }
std::string coeff_str(const Rat& c) { return c.get_str(); }
std::string coeff_str(const CycloNumber& c) { return "(" + c.str() + ")"; }

std::string elem_str(const FiniteAbelianGroup& G, int g)
{
    if (g == 0) return "1";
    Exps e = G.element(g);
    std::ostringstream os;
    os << "g[";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ']';
    return os.str();
}

} // namespace

template <class C>
std::string GroupRingElement<C>::str() const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [g, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << coeff_str(c);
        if (g) os << '*' << elem_str(*G_, g);
    }
    return os.str();
}

template class GroupRingElement<Int>;
template class GroupRingElement<Rat>;
template class GroupRingElement<CycloNumber>;

ZG norm_element(GroupPtr G, const std::vector<int>& H)
{
    ZG r(G);
    for (int h : G->subgroup(H)) r.add_term(h, 1);
    return r;
}

ZG group_elem(GroupPtr G, int g, long c)
{
    return ZG(std::move(G), g, Int(c));
}

QG to_rational(const ZG& x)
{
    QG r(x.group_ptr());
    for (auto& [g, c] : x.terms()) r.add_term(g, Rat(c));
    return r;
}

bool is_integral(const QG& x)
{
    for (auto& [g, c] : x.terms())
        if (c.get_den() != 1) return false;
    return true;
}

ZG to_integral(const QG& x)
{
    ZG r(x.group_ptr());
    for (auto& [g, c] : x.terms()) {
        if (c.get_den() != 1) throw std::domain_error("non-integral coefficient " + c.get_str());
        r.add_term(g, c.get_num());
    }
    return r;
}

CG to_cyclo(const QG& x, long modulus)
{
    CG r(x.group_ptr());
    for (auto& [g, c] : x.terms()) r.add_term(g, CycloNumber(modulus, c));
    return r;
}

CG to_cyclo(const ZG& x, long modulus) { return to_cyclo(to_rational(x), modulus); }

QG to_rational(const CG& x)
{
    QG r(x.group_ptr());
    for (auto& [g, c] : x.terms()) r.add_term(g, c.rational_value());
    return r;
}

/*{{{ characters */
CharacterOfG::CharacterOfG(GroupPtr G, std::vector<long> value_orders) : G_(std::move(G)), a_(std::move(value_orders))
{
    if (a_.size() != G_->rank()) throw std::invalid_argument("character exponent length mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = mod_l(a_[i], G_->orders()[i]);
}

long CharacterOfG::log_value(int g) const
{
    long M = modulus();
    Exps e = G_->element(g);
    long k = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) k = (k + a_[i] * e[i] % M * (M / G_->orders()[i])) % M;
    return k;
}

CycloNumber CharacterOfG::value(int g) const { return CycloNumber::zeta_pow(modulus(), log_value(g)); }

bool CharacterOfG::is_trivial() const
{
    for (long x : a_)
        if (x) return false;
    return true;
}

long CharacterOfG::order() const
{
    long o = 1;
    for (std::size_t i = 0; i < a_.size(); ++i) o = lcm_l(o, G_->orders()[i] / gcd_l(a_[i], G_->orders()[i]));
    return o;
}

CharacterOfG CharacterOfG::inverse() const
{
    std::vector<long> b(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) b[i] = -a_[i];
    return CharacterOfG(G_, b);
}

CharacterOfG CharacterOfG::operator*(const CharacterOfG& o) const
{
    std::vector<long> b(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) b[i] = a_[i] + o.a_[i];
    return CharacterOfG(G_, b);
}

CycloNumber CharacterOfG::apply(const QG& x) const
{
    if (!(x.group() == *G_)) throw std::invalid_argument("group mismatch");
    long M = modulus();
    std::vector<Rat> byroot(M, Rat(0));
    for (auto& [g, c] : x.terms()) byroot[log_value(g)] += c;
    CycloNumber s(M);
    for (long k = 0; k < M; ++k)
        if (byroot[k] != 0) s += CycloNumber::zeta_pow(M, k) * byroot[k];
    return s;
}

CycloNumber CharacterOfG::apply(const ZG& x) const { return apply(to_rational(x)); }

CycloNumber CharacterOfG::apply(const CG& x) const
{
    if (!(x.group() == *G_)) throw std::invalid_argument("group mismatch");
    long M = modulus();
    for (auto& [g, c] : x.terms()) M = lcm_l(M, c.modulus());
    CycloNumber s(M);
    for (auto& [g, c] : x.terms()) s += unify(c, M) * unify(value(g), M);
    return s;
}

CG CharacterOfG::idempotent(long M) const
{
    if (M == 0) M = modulus();
    if (M % modulus()) throw std::invalid_argument("idempotent modulus must be a multiple of exp(G)");
    CG e(G_);
    Rat inv(1, G_->order());
    for (int s = 0; s < G_->order(); ++s) e.add_term(G_->inv(s), unify(value(s), M) * inv);
    return e;
}

std::vector<CharacterOfG> all_characters(GroupPtr G)
{
    std::vector<CharacterOfG> out;
    FiniteAbelianGroup dual(G->orders());
    for (int i = 0; i < dual.order(); ++i) out.emplace_back(G, dual.element(i));
    return out;
}
/*}}}*/

/*{{{ JSON */
namespace {

template <class C>
nlohmann::json base_json(const GroupRingElement<C>& x)
{
    nlohmann::json j;
    j["group"] = x.group().orders();
    j["terms"] = nlohmann::json::array();
    return j;
}

} // namespace

std::string to_json(const QG& x)
{
    nlohmann::json j = base_json(x);
    for (auto& [g, c] : x.terms())
        j["terms"].push_back({{"g", x.group().element(g)}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    return j.dump();
}

std::string to_json(const ZG& x) { return to_json(to_rational(x)); }

std::string to_json(const CG& x)
{
    nlohmann::json j = base_json(x);
    for (auto& [g, c] : x.terms()) {
        nlohmann::json cs = nlohmann::json::array();
        for (auto& q : c.coeffs()) cs.push_back({q.get_num().get_str(), q.get_den().get_str()});
        j["terms"].push_back({{"g", x.group().element(g)}, {"modulus", c.modulus()}, {"coeffs", cs}});
    }
    return j.dump();
}

QG qg_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    auto G = make_group(j.at("group").get<std::vector<long>>());
    QG x(G);
    for (auto& t : j.at("terms")) {
        Int n = parse_int(t.at("num").get<std::string>());
        Int d = t.contains("den") ? parse_int(t.at("den").get<std::string>()) : Int(1);
        x.add_term(G->index(t.at("g").get<Exps>()), make_rat(n, d));
    }
    return x;
}
/*}}}*/

} // namespace starkit
