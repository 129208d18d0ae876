#pragma once

// Arrow presentations of ribbon graphs: circles carrying labelled, directed
// marking arrows, two per label.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ribbon {

enum class Flag : std::uint8_t { plus, minus };

constexpr Flag flipped(Flag f) noexcept { return f == Flag::plus ? Flag::minus : Flag::plus; }
constexpr char flag_char(Flag f) noexcept { return f == Flag::plus ? '+' : '-'; }

/// Labels are kept as strings. All-digit labels order numerically and come
/// before non-numeric ones, which order lexicographically.
inline bool is_numeric_label(std::string_view s) noexcept {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

inline bool label_less(std::string_view a, std::string_view b) noexcept {
    const bool na = is_numeric_label(a);
    const bool nb = is_numeric_label(b);
    if (na != nb) return na;
    if (na) {
        auto strip = [](std::string_view s) {
            const auto p = s.find_first_not_of('0');
            return p == std::string_view::npos ? std::string_view{} : s.substr(p);
        };
        const auto sa = strip(a), sb = strip(b);
        if (sa.size() != sb.size()) return sa.size() < sb.size();
        if (sa != sb) return sa < sb;
    }
    return a < b;
}

struct LabelLess {
    bool operator()(const std::string& a, const std::string& b) const noexcept { return label_less(a, b); }
};

struct ArrowOccurrence {
    std::string label;
    Flag flag = Flag::plus;

    friend bool operator==(const ArrowOccurrence&, const ArrowOccurrence&) = default;
};

struct Circle {
    std::string name;
    std::vector<ArrowOccurrence> occurrences;

    std::size_t degree() const noexcept { return occurrences.size(); }
};

/// Global position of an arrow occurrence: circle index and position on it.
struct OccurrenceRef {
    std::size_t circle = 0;
    std::size_t position = 0;

    friend bool operator==(const OccurrenceRef&, const OccurrenceRef&) = default;
};

class ArrowPresentation {
public:
    ArrowPresentation() = default;
    explicit ArrowPresentation(std::vector<Circle> circles) : circles_(std::move(circles)) {}

    const std::vector<Circle>& circles() const noexcept { return circles_; }
    std::size_t vertex_count() const noexcept { return circles_.size(); }

    /// Distinct labels in label order.
    std::vector<std::string> edge_labels() const {
        std::set<std::string, LabelLess> labels;
        for (const auto& c : circles_)
            for (const auto& o : c.occurrences) labels.insert(o.label);
        return {labels.begin(), labels.end()};
    }

    std::size_t edge_count() const { return edge_labels().size(); }

    /// Representation equality: same circles in the same order with the same
    /// occurrence sequences. Circle names are cosmetic and ignored.
    friend bool operator==(const ArrowPresentation& a, const ArrowPresentation& b) {
        if (a.circles_.size() != b.circles_.size()) return false;
        for (std::size_t i = 0; i < a.circles_.size(); ++i)
            if (a.circles_[i].occurrences != b.circles_[i].occurrences) return false;
        return true;
    }

private:
    std::vector<Circle> circles_;
};

// ---------------------------------------------------------------------------
// Edge indexing

/// Maps labels to dense edge indices (label order) and records both
/// occurrences of every edge. The first occurrence in circle order is the
/// reference occurrence `first`.
class EdgeIndex {
public:
    struct Ends {
        OccurrenceRef first;
        OccurrenceRef second;
    };

    explicit EdgeIndex(const ArrowPresentation& ap) : labels_(ap.edge_labels()) {
        for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
        ends_.resize(labels_.size());
        std::vector<int> seen(labels_.size(), 0);
        const auto& cs = ap.circles();
        for (std::size_t c = 0; c < cs.size(); ++c) {
            for (std::size_t p = 0; p < cs[c].occurrences.size(); ++p) {
                const auto e = index_.at(cs[c].occurrences[p].label);
                if (seen[e] == 0)
                    ends_[e].first = {c, p};
                else if (seen[e] == 1)
                    ends_[e].second = {c, p};
                else
                    throw std::invalid_argument("label " + labels_[e] + " occurs more than twice");
                ++seen[e];
            }
        }
        for (std::size_t e = 0; e < seen.size(); ++e)
            if (seen[e] != 2) throw std::invalid_argument("label " + labels_[e] + " occurs once");
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t e) const { return labels_.at(e); }
    const Ends& ends(std::size_t e) const { return ends_.at(e); }

    std::optional<std::size_t> find(const std::string& label) const {
        const auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t at(const std::string& label) const { return index_.at(label); }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<Ends> ends_;
};

/// A subset of the edge set, indexed by EdgeIndex position.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::size_t edge_count, bool value = false) : bits_(edge_count, value) {}

    static EdgeSet from_mask(std::size_t edge_count, std::uint64_t mask) {
        EdgeSet s(edge_count);
        for (std::size_t e = 0; e < edge_count; ++e) s.bits_[e] = ((mask >> e) & 1U) != 0;
        return s;
    }

    std::size_t universe() const noexcept { return bits_.size(); }
    bool contains(std::size_t e) const { return bits_.at(e); }
    void insert(std::size_t e) { bits_.at(e) = true; }
    void erase(std::size_t e) { bits_.at(e) = false; }
    std::size_t size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
    bool empty() const { return size() == 0; }

    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (std::size_t e = 0; e < bits_.size() && e < 64; ++e)
            if (bits_[e]) m |= std::uint64_t{1} << e;
        return m;
    }

    EdgeSet complement() const {
        EdgeSet r(bits_.size());
        for (std::size_t e = 0; e < bits_.size(); ++e) r.bits_[e] = !bits_[e];
        return r;
    }

    EdgeSet symmetric_difference(const EdgeSet& other) const {
        EdgeSet r(bits_.size());
        for (std::size_t e = 0; e < bits_.size(); ++e) r.bits_[e] = bits_[e] != other.bits_.at(e);
        return r;
    }

    EdgeSet united(const EdgeSet& other) const {
        EdgeSet r(bits_.size());
        for (std::size_t e = 0; e < bits_.size(); ++e) r.bits_[e] = bits_[e] || other.bits_.at(e);
        return r;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> m;
        for (std::size_t e = 0; e < bits_.size(); ++e)
            if (bits_[e]) m.push_back(e);
        return m;
    }

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

    /// Orders by cardinality, then by member indices.
    friend bool operator<(const EdgeSet& a, const EdgeSet& b) {
        const auto sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.members() < b.members();
    }

private:
    std::vector<bool> bits_;
};

using EdgeSetFamily = std::set<EdgeSet>;

/// Every subset of an `edge_count`-edge set, in mask order.
inline std::vector<EdgeSet> all_subsets(std::size_t edge_count) {
    if (edge_count >= 31) throw std::invalid_argument("too many edges to enumerate subsets");
    std::vector<EdgeSet> out;
    out.reserve(std::size_t{1} << edge_count);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << edge_count); ++m) out.push_back(EdgeSet::from_mask(edge_count, m));
    return out;
}

inline std::string format_edge_set(const EdgeSet& s, const EdgeIndex& idx) {
    if (s.empty()) return "∅";
    std::string out = "{";
    bool first = true;
    for (auto e : s.members()) {
        if (!first) out += ",";
        out += idx.label(e);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Parsing, serialization, validation

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised by parse() when the text is well-formed but violates a
/// presentation invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
        return s;
    }
    std::vector<std::string> violations_;
};

/// Lists every invariant violation; an empty list means valid.
inline std::vector<std::string> validate(const ArrowPresentation& ap) {
    std::vector<std::string> violations;
    std::map<std::string, std::size_t, LabelLess> multiplicity;
    std::set<std::string> names;
    for (const auto& c : ap.circles()) {
        if (!c.name.empty() && !names.insert(c.name).second) violations.push_back("duplicate circle name " + c.name);
        for (const auto& o : c.occurrences) {
            if (o.label.empty()) violations.push_back("empty label on circle " + c.name);
            ++multiplicity[o.label];
        }
    }
    for (const auto& [label, n] : multiplicity) {
        if (n == 1)
            violations.push_back("label " + label + " occurs once");
        else if (n != 2)
            violations.push_back("label " + label + " has multiplicity " + std::to_string(n));
    }
    return violations;
}

inline bool is_valid(const ArrowPresentation& ap) { return validate(ap).empty(); }

namespace detail {

inline bool is_label_char(char c) noexcept {
    return std::isspace(static_cast<unsigned char>(c)) == 0 && c != ':' && c != '#';
}

}  // namespace detail

/// Parses the line format `<name>: <label><+|-> ...`. `#` starts a comment.
inline ArrowPresentation parse(std::string_view text) {
    std::vector<Circle> circles;
    std::set<std::string> names;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, 1, "expected '<name>:'");
        const auto name_begin = line.find_first_not_of(" \t");
        auto name_end = colon;
        while (name_end > name_begin && (line[name_end - 1] == ' ' || line[name_end - 1] == '\t')) --name_end;
        if (name_begin >= name_end) throw ParseError(line_no, colon + 1, "missing circle name");
        std::string name(line.substr(name_begin, name_end - name_begin));
        for (std::size_t i = 0; i < name.size(); ++i)
            if (!detail::is_label_char(name[i])) throw ParseError(line_no, name_begin + i + 1, "invalid character in circle name");
        if (!names.insert(name).second) throw ParseError(line_no, name_begin + 1, "duplicate circle name " + name);

        Circle circle{name, {}};
        std::size_t i = colon + 1;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t') {
                ++i;
                continue;
            }
            const auto tok_begin = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            const auto tok = line.substr(tok_begin, i - tok_begin);
            const char sign = tok.back();
            if (tok.size() < 2 || (sign != '+' && sign != '-'))
                throw ParseError(line_no, tok_begin + 1, "expected token <label><+|->, got '" + std::string(tok) + "'");
            const auto label = tok.substr(0, tok.size() - 1);
            for (std::size_t k = 0; k < label.size(); ++k)
                if (!detail::is_label_char(label[k]) || label[k] == '+' || label[k] == '-')
                    throw ParseError(line_no, tok_begin + k + 1, "invalid character in label");
            circle.occurrences.push_back({std::string(label), sign == '+' ? Flag::plus : Flag::minus});
        }
        circles.push_back(std::move(circle));
    }
    ArrowPresentation ap(std::move(circles));
    if (auto v = validate(ap); !v.empty()) throw ValidationError(std::move(v));
    return ap;
}

inline std::string serialize(const ArrowPresentation& ap) {
    std::string out;
    std::size_t i = 0;
    for (const auto& c : ap.circles()) {
        ++i;
        out += c.name.empty() ? "C" + std::to_string(i) : c.name;
        out += ':';
        for (const auto& o : c.occurrences) {
            out += ' ';
            out += o.label;
            out += flag_char(o.flag);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Underlying graph and degree predicates

struct AbstractEdge {
    std::string label;
    std::size_t u = 0;
    std::size_t v = 0;

    bool is_loop() const noexcept { return u == v; }
};

struct AbstractGraph {
    std::size_t vertex_count = 0;
    std::vector<AbstractEdge> edges;
};

inline AbstractGraph underlying_graph(const ArrowPresentation& ap) {
    const EdgeIndex idx(ap);
    AbstractGraph g{ap.vertex_count(), {}};
    for (std::size_t e = 0; e < idx.size(); ++e)
        g.edges.push_back({idx.label(e), idx.ends(e).first.circle, idx.ends(e).second.circle});
    return g;
}

/// Degree of each circle, keyed by circle name.
inline std::map<std::string, std::size_t> vertex_degrees(const ArrowPresentation& ap) {
    std::map<std::string, std::size_t> out;
    for (const auto& c : ap.circles()) out[c.name] = c.degree();
    return out;
}

inline std::vector<std::size_t> degree_sequence(const ArrowPresentation& ap) {
    std::vector<std::size_t> d;
    for (const auto& c : ap.circles()) d.push_back(c.degree());
    return d;
}

inline bool is_eulerian(const ArrowPresentation& ap) {
    return std::all_of(ap.circles().begin(), ap.circles().end(), [](const Circle& c) { return c.degree() % 2 == 0; });
}

inline bool is_bipartite(const AbstractGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.vertex_count);
    for (const auto& e : g.edges) {
        if (e.is_loop()) return false;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> colour(g.vertex_count, -1);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < g.vertex_count; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v]) {
                if (colour[w] < 0) {
                    colour[w] = 1 - colour[v];
                    stack.push_back(w);
                } else if (colour[w] == colour[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool is_bipartite(const ArrowPresentation& ap) { return is_bipartite(underlying_graph(ap)); }

inline bool has_loop(const ArrowPresentation& ap) {
    const auto g = underlying_graph(ap);
    return std::any_of(g.edges.begin(), g.edges.end(), [](const AbstractEdge& e) { return e.is_loop(); });
}

}  // namespace ribbon
