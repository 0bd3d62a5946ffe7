#include "sge/problem.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace sge {

ProblemError::ProblemError(const std::string& what, int line_)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what : what), line(line_) {}

bool operator==(const Problem& a, const Problem& b) {
    return a.name == b.name && a.pde == b.pde && a.dependent == b.dependent && a.coordinates == b.coordinates &&
           a.parameters == b.parameters && a.frame.spatial == b.frame.spatial && a.frame.time == b.frame.time &&
           a.frame.speed == b.frame.speed && a.steps == b.steps && a.options == b.options &&
           a.bindings == b.bindings && a.reference == b.reference;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) out += (k ? sep : "") + items[k];
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class T>
T parse_number(const std::string& text, int line, const char* what) {
    T value{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ProblemError(std::string("invalid ") + what + " '" + text + "'", line);
    return value;
}

void validate(const Problem& p) {
    if (p.pde.empty()) throw ProblemError("missing [problem] pde", 0);
    if (p.coordinates.empty()) throw ProblemError("missing [problem] coordinates", 0);
    std::set<std::string> names;
    auto claim = [&](const std::string& n) {
        if (!valid_name(n)) throw ProblemError("invalid name '" + n + "'", 0);
        if (n == "eta") throw ProblemError("'eta' is reserved for the wave variable", 0);
        if (!names.insert(n).second) throw ProblemError("name '" + n + "' is used twice", 0);
    };
    claim(p.dependent);
    for (const auto& c : p.coordinates) claim(c);
    for (const auto& c : p.parameters) claim(c);
    claim(p.frame.speed);
    if (p.frame.spatial.empty()) throw ProblemError("missing [frame] coefficients", 0);
    for (const auto& [c, k] : p.frame.spatial)
        if (std::find(p.coordinates.begin(), p.coordinates.end(), c) == p.coordinates.end())
            throw ProblemError("frame coordinate '" + c + "' is not a declared coordinate", 0);
    if (!p.frame.time.empty() &&
        std::find(p.coordinates.begin(), p.coordinates.end(), p.frame.time) == p.coordinates.end())
        throw ProblemError("frame time '" + p.frame.time + "' is not a declared coordinate", 0);
    for (const auto& s : p.steps)
        if (s != "integrate_once" && s != "reduce_order") throw ProblemError("unknown pipeline step '" + s + "'", 0);
    for (const auto& [name, value] : p.bindings)
        if (std::find(p.parameters.begin(), p.parameters.end(), name) == p.parameters.end())
            throw ProblemError("binding for undeclared parameter '" + name + "'", 0);
    if (p.options.points <= 0) throw ProblemError("points must be positive", 0);
    if (!(p.options.tolerance > 0)) throw ProblemError("tolerance must be positive", 0);
    try {
        parse_expr(p.pde);
    } catch (const ParseError& e) {
        throw ProblemError(std::string("pde: ") + e.what(), 0);
    }
}

}  // namespace

Problem parse_problem(const std::string& text) {
    Problem p;
    std::istringstream is(text);
    std::string raw, section;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ProblemError("malformed section header", line);
            section = trim(s.substr(1, s.size() - 2));
            static const std::set<std::string> known = {"problem", "frame", "pipeline", "options", "bindings", "reference"};
            if (!known.count(section)) throw ProblemError("unknown section [" + section + "]", line);
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ProblemError("expected 'key = value'", line);
        std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (section.empty()) throw ProblemError("entry outside of a section", line);
        if (!seen.insert(section + "." + key).second) throw ProblemError("duplicate key '" + key + "'", line);

        if (section == "problem") {
            if (key == "name") p.name = value;
            else if (key == "pde") p.pde = value;
            else if (key == "dependent") p.dependent = value;
            else if (key == "coordinates") p.coordinates = split(value, ',');
            else if (key == "parameters") p.parameters = split(value, ',');
            else throw ProblemError("unknown key '" + key + "' in [problem]", line);
        } else if (section == "frame") {
            if (key == "coefficients") {
                for (const auto& item : split(value, ',')) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos) throw ProblemError("expected coordinate:coefficient", line);
                    try {
                        p.frame.spatial.emplace_back(trim(item.substr(0, colon)), Rational::parse(trim(item.substr(colon + 1))));
                    } catch (const std::invalid_argument& e) {
                        throw ProblemError(e.what(), line);
                    }
                }
            } else if (key == "time") p.frame.time = value;
            else if (key == "speed") p.frame.speed = value;
            else throw ProblemError("unknown key '" + key + "' in [frame]", line);
        } else if (section == "pipeline") {
            if (key == "steps") p.steps = split(value, ',');
            else throw ProblemError("unknown key '" + key + "' in [pipeline]", line);
        } else if (section == "options") {
            if (key == "max_pairs") p.options.max_pairs = parse_number<std::size_t>(value, line, "max_pairs");
            else if (key == "tolerance") p.options.tolerance = parse_number<double>(value, line, "tolerance");
            else if (key == "seed") p.options.seed = parse_number<std::uint64_t>(value, line, "seed");
            else if (key == "points") p.options.points = parse_number<int>(value, line, "points");
            else throw ProblemError("unknown key '" + key + "' in [options]", line);
        } else if (section == "bindings") {
            p.bindings.emplace_back(key, value);
        } else if (section == "reference") {
            p.reference.emplace_back(key, split(value, ';'));
        }
    }
    validate(p);
    return p;
}

std::string serialize_problem(const Problem& p) {
    std::ostringstream os;
    os << "[problem]\n";
    if (!p.name.empty()) os << "name = " << p.name << "\n";
    os << "pde = " << p.pde << "\n";
    os << "dependent = " << p.dependent << "\n";
    os << "coordinates = " << join(p.coordinates, ", ") << "\n";
    os << "parameters =" << (p.parameters.empty() ? "" : " " + join(p.parameters, ", ")) << "\n";
    os << "\n[frame]\n";
    std::vector<std::string> coeffs;
    for (const auto& [c, k] : p.frame.spatial) coeffs.push_back(c + ":" + k.to_string());
    os << "coefficients = " << join(coeffs, ", ") << "\n";
    if (!p.frame.time.empty()) os << "time = " << p.frame.time << "\n";
    os << "speed = " << p.frame.speed << "\n";
    os << "\n[pipeline]\n";
    os << "steps =" << (p.steps.empty() ? "" : " " + join(p.steps, ", ")) << "\n";
    os << "\n[options]\n";
    os << "max_pairs = " << p.options.max_pairs << "\n";
    os << "tolerance = " << format_double(p.options.tolerance) << "\n";
    os << "seed = " << p.options.seed << "\n";
    os << "points = " << p.options.points << "\n";
    if (!p.bindings.empty()) {
        os << "\n[bindings]\n";
        for (const auto& [k, v] : p.bindings) os << k << " = " << v << "\n";
    }
    if (!p.reference.empty()) {
        os << "\n[reference]\n";
        for (const auto& [k, eqs] : p.reference) os << k << " = " << join(eqs, "; ") << "\n";
    }
    return os.str();
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

}  // namespace sge
