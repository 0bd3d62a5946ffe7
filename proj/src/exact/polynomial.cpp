#include "sge/polynomial.hpp"

#include <sstream>

namespace sge {

VarSet make_vars(std::vector<std::string> names) {
    for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = a + 1; b < names.size(); ++b)
            if (names[a] == names[b]) throw std::invalid_argument("duplicate variable '" + names[a] + "'");
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarSet& a, const VarSet& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

int var_index(const VarSet& vars, const std::string& name) {
    if (!vars) return -1;
    for (std::size_t k = 0; k < vars->size(); ++k)
        if ((*vars)[k] == name) return static_cast<int>(k);
    return -1;
}

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
    return out;
}

Exponents operator+(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

Exponents operator-(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

int total_degree(const Exponents& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

namespace detail {

std::string monomial_string(const std::vector<std::string>& names, const Exponents& e) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[k];
        if (e[k] != 1) out += "^" + std::to_string(e[k]);
    }
    return out;
}

namespace {

bool is_compound(const std::string& s) {
    // anything with a top-level binary +/- needs parentheses in a product
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        char ch = s[k];
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (depth == 0 && k > 0 && (ch == '+' || ch == '-') && s[k - 1] == ' ') return true;
    }
    return false;
}

}  // namespace

std::string join_terms(const std::vector<std::pair<std::string, std::string>>& parts) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [coeff, mono] : parts) {
        std::string term;
        bool negative = false;
        std::string c = coeff;
        if (!is_compound(c) && !c.empty() && c[0] == '-') {
            negative = true;
            c.erase(0, 1);
        }
        if (mono.empty()) term = is_compound(c) ? "(" + c + ")" : c;
        else if (c == "1") term = mono;
        else term = (is_compound(c) ? "(" + c + ")" : c) + "*" + mono;
        if (first) os << (negative ? "-" : "") << term;
        else os << (negative ? " - " : " + ") << term;
        first = false;
    }
    return os.str();
}

}  // namespace detail
}  // namespace sge
