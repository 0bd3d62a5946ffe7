#include "sge/extension.hpp"

#include <algorithm>
#include <bit>

namespace sge {

ExtNumber::ExtNumber(RationalFunction value) {
    if (!value.is_zero()) comps_.emplace(0u, std::move(value));
}

ExtNumber::ExtNumber(const RadicalValue& value) {
    if (value.is_zero()) return;
    if (value.is_rational()) {
        comps_.emplace(0u, value.rational_value());
        return;
    }
    rads_.push_back(value.radicand());
    comps_.emplace(1u, value.signed_outer());
}

RationalFunction ExtNumber::rational_value() const {
    if (!is_rational()) throw std::logic_error("extension element is not rational");
    return comps_.empty() ? RationalFunction(0) : comps_.begin()->second;
}

std::optional<RadicalValue> ExtNumber::as_radical() const {
    if (is_rational()) return RadicalValue(rational_value());
    if (comps_.size() != 1) return std::nullopt;
    auto [mask, coeff] = *comps_.begin();
    if (std::popcount(mask) != 1) return std::nullopt;
    return RadicalValue::make(1, coeff, rads_[std::countr_zero(mask)]);
}

ExtNumber ExtNumber::operator-() const {
    ExtNumber out = *this;
    for (auto& [m, c] : out.comps_) c = -c;
    return out;
}

void ExtNumber::merge_tables(ExtNumber& o) {
    if (o.rads_ == rads_) return;
    std::vector<RationalFunction> all = rads_;
    for (const auto& r : o.rads_)
        if (std::find(all.begin(), all.end(), r) == all.end()) all.push_back(r);
    std::stable_sort(all.begin(), all.end(),
                     [](const RationalFunction& a, const RationalFunction& b) { return a.to_string() < b.to_string(); });
    if (all.size() > 31) throw std::length_error("too many independent radicals");
    auto remap = [&all](ExtNumber& x) {
        std::vector<unsigned> bit(x.rads_.size());
        for (std::size_t k = 0; k < x.rads_.size(); ++k)
            bit[k] = 1u << (std::find(all.begin(), all.end(), x.rads_[k]) - all.begin());
        std::map<unsigned, RationalFunction> comps;
        for (const auto& [m, c] : x.comps_) {
            unsigned nm = 0;
            for (std::size_t k = 0; k < bit.size(); ++k)
                if (m & (1u << k)) nm |= bit[k];
            comps.emplace(nm, c);
        }
        x.comps_ = std::move(comps);
        x.rads_ = all;
    };
    remap(*this);
    remap(o);
}

void ExtNumber::compact() {
    for (auto it = comps_.begin(); it != comps_.end();) {
        if (it->second.is_zero()) it = comps_.erase(it);
        else ++it;
    }
    unsigned used = 0;
    for (const auto& [m, c] : comps_) used |= m;
    if (used == (rads_.size() >= 32 ? ~0u : (1u << rads_.size()) - 1)) return;
    std::vector<RationalFunction> kept;
    std::vector<int> slot(rads_.size(), -1);
    for (std::size_t k = 0; k < rads_.size(); ++k) {
        if (!(used & (1u << k))) continue;
        slot[k] = static_cast<int>(kept.size());
        kept.push_back(rads_[k]);
    }
    std::map<unsigned, RationalFunction> comps;
    for (const auto& [m, c] : comps_) {
        unsigned nm = 0;
        for (std::size_t k = 0; k < rads_.size(); ++k)
            if (m & (1u << k)) nm |= 1u << slot[k];
        comps.emplace(nm, c);
    }
    comps_ = std::move(comps);
    rads_ = std::move(kept);
}

ExtNumber& ExtNumber::operator+=(const ExtNumber& o) {
    ExtNumber other = o;
    merge_tables(other);
    for (const auto& [m, c] : other.comps_) {
        auto [it, inserted] = comps_.try_emplace(m, c);
        if (!inserted) it->second += c;
    }
    compact();
    return *this;
}

ExtNumber& ExtNumber::operator*=(const ExtNumber& o) {
    ExtNumber other = o;
    merge_tables(other);
    std::map<unsigned, RationalFunction> out;
    for (const auto& [ma, ca] : comps_) {
        for (const auto& [mb, cb] : other.comps_) {
            RationalFunction c = ca * cb;
            unsigned both = ma & mb;
            for (std::size_t k = 0; k < rads_.size(); ++k)
                if (both & (1u << k)) c *= rads_[k];
            auto [it, inserted] = out.try_emplace(ma ^ mb, c);
            if (!inserted) it->second += c;
        }
    }
    comps_ = std::move(out);
    compact();
    return *this;
}

std::optional<ExtNumber> ExtNumber::substituted(const std::map<std::string, RationalFunction>& values) const {
    for (const auto& r : rads_)
        if (substitute(r, values) != r) return std::nullopt;
    ExtNumber out = *this;
    for (auto& [m, c] : out.comps_) c = substitute(c, values);
    out.compact();
    return out;
}

std::complex<double> ExtNumber::evaluate(const std::vector<std::complex<double>>& values) const {
    std::vector<std::complex<double>> roots;
    for (const auto& r : rads_) roots.push_back(std::sqrt(r.evaluate(values)));
    std::complex<double> sum = 0;
    for (const auto& [m, c] : comps_) {
        std::complex<double> t = c.evaluate(values);
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (m & (1u << k)) t *= roots[k];
        sum += t;
    }
    return sum;
}

std::string ExtNumber::to_string() const {
    if (comps_.empty()) return "0";
    if (is_rational()) return comps_.begin()->second.to_string();
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [m, c] : comps_) {
        std::string mono;
        for (std::size_t k = 0; k < rads_.size(); ++k) {
            if (!(m & (1u << k))) continue;
            if (!mono.empty()) mono += "*";
            mono += "sqrt(" + rads_[k].to_string() + ")";
        }
        parts.emplace_back(c.to_string(), mono);
    }
    return detail::join_terms(parts);
}

}  // namespace sge
