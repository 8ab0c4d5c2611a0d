#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "setqm/entangle.hpp"
#include "setqm/error.hpp"
#include "setqm/experiments.hpp"
#include "setqm/gf2.hpp"
#include "setqm/groups.hpp"
#include "setqm/loginfo.hpp"
#include "setqm/measure.hpp"
#include "setqm/partition.hpp"

namespace setqm::cli {
namespace {

using json = nlohmann::ordered_json;

// Bad flag combinations; reported like malformed input.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    bool approx = false;
    std::uint64_t seed = 0;
    std::string universe;
};

std::string decimal(double d) {
    std::ostringstream s;
    s << std::setprecision(6) << d;
    return s.str();
}

// Collects the structured document and the plain-text rendering side by side.
class Output {
public:
    Output(const Options& opt, std::string command) : opt_(opt) {
        doc_["schema_version"] = kSchemaVersion;
        doc_["command"] = std::move(command);
        doc_["inputs"] = json::object();
        doc_["results"] = json::object();
    }

    json& inputs() { return doc_["inputs"]; }
    json& results() { return doc_["results"]; }
    std::ostringstream& text() { return text_; }

    // Exact value, plus a decimal approximation under --float.
    void put(json& where, const std::string& key, const Rational& r) const {
        where[key] = to_string(r);
        if (opt_.approx) {
            where[key + "_float"] = to_double(r);
        }
    }

    std::string show(const Rational& r) const {
        return opt_.approx ? to_string(r) + " (~" + decimal(to_double(r)) + ")" : to_string(r);
    }

    void emit(std::ostream& out) const {
        if (opt_.json) {
            out << doc_.dump(2) << "\n";
        } else {
            out << text_.str();
        }
    }

private:
    const Options& opt_;
    json doc_;
    std::ostringstream text_;
};

std::string trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

// "1/2,1/4,1/4"
ProbabilityVector parse_probabilities(const std::string& text) {
    std::vector<Rational> p;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        std::size_t offset = start;
        const std::string piece = trim(std::string_view(text).substr(start, end - start), offset);
        try {
            p.push_back(parse_rational(piece));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), text, offset + e.position());
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return ProbabilityVector(p);
}

Universe require_universe(const Options& opt, const char* command) {
    if (opt.universe.empty()) {
        throw UsageError(std::string(command) + " needs --universe");
    }
    return parse_universe(opt.universe);
}

std::string basis_spec(const Basis& b) {
    std::string out = b.name() + ":";
    for (std::size_t i = 0; i < b.dimension(); ++i) {
        out += (i ? ";" : "") + b.labels().label(i) + "=" +
               format_subset(to_elements(b.vector(i), b.reference().size()), b.reference());
    }
    return out;
}

std::vector<Basis> bases_with_standard(const Universe& u, const std::vector<std::string>& specs) {
    std::vector<Basis> out{Basis::standard(u)};
    for (const auto& s : specs) {
        out.push_back(parse_basis(s, u));
        for (std::size_t k = 0; k + 1 < out.size(); ++k) {
            if (out[k].name() == out.back().name()) {
                throw UsageError("basis name '" + out.back().name() + "' used twice");
            }
        }
    }
    return out;
}

// The home basis is the one whose labels include the first label of `text`.
Attribute resolve_attribute(const std::string& text, const std::vector<Basis>& bases) {
    std::size_t offset = 0;
    const std::size_t colon = text.find(':');
    const std::string first = trim(std::string_view(text).substr(0, colon), offset);
    for (const auto& b : bases) {
        if (b.labels().find(first)) {
            return parse_attribute(text, b);
        }
    }
    throw ParseError("label '" + first + "' belongs to no basis", text, offset);
}

// A ket written in whichever basis its labels belong to.
BitVector resolve_ket(const std::string& text, const std::vector<Basis>& bases, const Basis& preferred) {
    try {
        return parse_ket(text, preferred);
    } catch (const ParseError& first) {
        for (const auto& b : bases) {
            try {
                return parse_ket(text, b);
            } catch (const ParseError&) {
            }
        }
        throw;
    }
}

json matrix_json(const BitMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m.get(i, j) ? 1 : 0);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::vector<std::string>> rendered(const SetDensityMatrix& rho) {
    std::vector<std::vector<std::string>> m(rho.dimension());
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        for (std::size_t j = 0; j < rho.dimension(); ++j) {
            m[i].push_back(format_entry(rho, i, j));
        }
    }
    return m;
}

void print_grid(std::ostream& out, const std::vector<std::vector<std::string>>& cells, const std::string& indent) {
    std::vector<std::size_t> width;
    for (const auto& row : cells) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            width[j] = std::max(width[j], row[j].size());
        }
    }
    for (const auto& row : cells) {
        std::string line = indent;
        for (std::size_t j = 0; j < row.size(); ++j) {
            line += row[j];
            if (j + 1 < row.size()) {
                line += std::string(width[j] - row[j].size() + 2, ' ');
            }
        }
        out << line << "\n";
    }
}

json distribution_json(const Output& o, const std::vector<std::pair<std::string, Rational>>& d) {
    json j = json::object();
    for (const auto& [label, p] : d) {
        o.put(j, label, p);
    }
    return j;
}

void report(Output& o, const ExperimentReport& r) {
    auto& text = o.text();
    auto& res = o.results();
    res["name"] = r.name;
    text << r.name << "\n";
    json steps = json::array();
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
        const auto& s = r.steps[k];
        json step;
        step["description"] = s.description;
        text << "  " << k + 1 << ". " << s.description << "\n";
        if (!s.state.empty()) {
            step["state"] = s.state;
            text << "     state: " << s.state << "\n";
        }
        if (!s.distribution.empty()) {
            step["distribution"] = distribution_json(o, s.distribution);
            std::string line;
            for (const auto& [label, p] : s.distribution) {
                line += (line.empty() ? "" : ", ") + ("Pr(" + label + ") = ") + o.show(p);
            }
            text << "     " << line << "\n";
        }
        if (!s.matrix.empty()) {
            step["matrix"] = s.matrix;
            print_grid(text, s.matrix, "       ");
        }
        steps.push_back(step);
    }
    text << "values:\n";
    for (const auto& [key, v] : r.values) {
        o.put(res, key, v);
        text << "  " << key << " = " << o.show(v) << "\n";
    }
    if (!r.verdicts.empty()) {
        text << "verdicts:\n";
    }
    for (const auto& [key, v] : r.verdicts) {
        res[key] = v;
        text << "  " << key << ": " << (v ? "true" : "false") << "\n";
    }
    res["steps"] = steps;
}

// --- lattice ---------------------------------------------------------------

struct LatticeArgs {
    std::vector<std::string> partitions;
    bool join = false, meet = false, implies = false, refines = false, dit = false, entropy = false;
    std::string probs;
};

void run_lattice(const Options& opt, const LatticeArgs& a, Output& o) {
    const Universe u = opt.universe.empty() ? parse_partition(a.partitions.front()).universe()
                                            : parse_universe(opt.universe);
    std::vector<Partition> ps;
    for (const auto& t : a.partitions) {
        ps.push_back(parse_partition(t, u));
    }
    o.inputs()["universe"] = to_string(u);
    json pin = json::array();
    for (const auto& p : ps) {
        pin.push_back(to_string(p));
    }
    o.inputs()["partitions"] = pin;

    LatticeArgs sel = a;
    const bool binary_asked = a.join || a.meet || a.implies || a.refines;
    if (!binary_asked && !a.dit && !a.entropy) {
        sel.join = sel.meet = sel.implies = sel.refines = ps.size() == 2;
        sel.dit = sel.entropy = true;
    }
    if (binary_asked && ps.size() != 2) {
        throw UsageError("--join, --meet, --implies and --refines need two partitions");
    }
    std::optional<ProbabilityVector> p;
    if (!a.probs.empty()) {
        p = parse_probabilities(a.probs);
        json probs = json::array();
        for (const auto& x : p->entries()) {
            probs.push_back(to_string(x));
        }
        o.inputs()["probabilities"] = probs;
    }

    const int selected = sel.join + sel.meet + sel.implies + sel.refines + sel.dit + sel.entropy;
    const bool bare = selected == 1 && (binary_asked || ps.size() == 1);
    auto line = [&](const std::string& label, const std::string& value) {
        o.text() << (bare ? "" : label + ": ") << value << "\n";
    };
    auto& res = o.results();
    if (sel.join) {
        res["join"] = to_string(join(ps[0], ps[1]));
        line("join", res["join"]);
    }
    if (sel.meet) {
        res["meet"] = to_string(meet(ps[0], ps[1]));
        line("meet", res["meet"]);
    }
    if (sel.implies) {
        res["implies"] = to_string(implication(ps[0], ps[1]));
        line("implies", res["implies"]);
    }
    if (sel.refines) {
        res["refines"] = refines(ps[0], ps[1]);
        line("refines", res["refines"] ? "true" : "false");
    }
    if (sel.dit) {
        json dits = json::array();
        for (const auto& pi : ps) {
            const Relation d = dit_set(pi);
            dits.push_back({{"partition", to_string(pi)}, {"pairs", to_string(d)}, {"count", d.count()}});
            line("dit " + to_string(pi), to_string(d) + (bare ? "" : " (" + std::to_string(d.count()) + " pairs)"));
        }
        res["dit"] = dits;
    }
    if (sel.entropy) {
        json hs = json::array();
        for (const auto& pi : ps) {
            const Rational h = p ? logical_entropy(pi, *p) : logical_entropy(pi);
            json entry{{"partition", to_string(pi)}};
            o.put(entry, "h", h);
            hs.push_back(entry);
            line("h " + to_string(pi), o.show(h));
        }
        res["entropy"] = hs;
    }
}

// --- measure ---------------------------------------------------------------

struct MeasureArgs {
    std::string state;
    std::string attr;
    std::vector<std::string> bases;
    std::string outcome;
    bool sample = false;
};

void run_measure(const Options& opt, const MeasureArgs& a, Output& o) {
    const Universe u = require_universe(opt, "measure");
    const auto bases = bases_with_standard(u, a.bases);
    const Attribute f = resolve_attribute(a.attr, bases);
    const BitVector s = express(resolve_ket(a.state, bases, f.basis()), f.basis());

    o.inputs()["universe"] = to_string(u);
    o.inputs()["state"] = to_string(s);
    o.inputs()["basis"] = f.basis().name();
    json values = json::object();
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        values[f.basis().labels().label(i)] = to_string(f.value(i));
    }
    o.inputs()["attribute"] = values;

    auto& text = o.text();
    auto& res = o.results();
    text << "state " << to_string(s) << " in basis " << f.basis().name() << "\n";
    const auto dist = born(s, f);
    json outcomes = json::array();
    for (const auto& out : dist.outcomes) {
        json j{{"value", to_string(out.value)}};
        o.put(j, "probability", out.probability);
        j["post_state"] = to_string(out.post_state);
        outcomes.push_back(j);
        text << "  outcome " << to_string(out.value) << ": Pr = " << o.show(out.probability) << ", post-state "
             << to_string(out.post_state) << "\n";
    }
    res["outcomes"] = outcomes;

    if (!a.outcome.empty()) {
        const Rational r = parse_rational(a.outcome);
        o.inputs()["outcome"] = to_string(r);
        const BitVector post = measure(s, f, r);
        res["post_state"] = to_string(post);
        text << "post-state for outcome " << to_string(r) << ": " << to_string(post) << "\n";
    }
    if (a.sample) {
        // Each element of S is equally likely; pick one and report its outcome.
        std::mt19937_64 rng(opt.seed);
        std::uint64_t k = rng() % s.count();
        const Outcome* chosen = nullptr;
        for (const auto& out : dist.outcomes) {
            const std::size_t n = out.post_state.count();
            if (k < n) {
                chosen = &out;
                break;
            }
            k -= n;
        }
        o.inputs()["seed"] = opt.seed;
        res["sample"] = {{"value", to_string(chosen->value)}, {"post_state", to_string(chosen->post_state)}};
        text << "sampled outcome (seed " << opt.seed << "): " << to_string(chosen->value) << ", post-state "
             << to_string(chosen->post_state) << "\n";
    }
}

// --- density ---------------------------------------------------------------

struct DensityArgs {
    std::string partition;
    std::string probs;
    std::vector<std::string> measurements;
};

void run_density(const Options& opt, const DensityArgs& a, Output& o) {
    const Universe u = opt.universe.empty() ? parse_partition(a.partition).universe() : parse_universe(opt.universe);
    const Partition pi = parse_partition(a.partition, u);
    const ProbabilityVector p = a.probs.empty() ? ProbabilityVector::uniform(u.size()) : parse_probabilities(a.probs);
    std::vector<Partition> ms;
    for (const auto& m : a.measurements) {
        ms.push_back(parse_partition(m, u));
    }
    o.inputs()["universe"] = to_string(u);
    o.inputs()["partition"] = to_string(pi);
    json probs = json::array();
    for (const auto& x : p.entries()) {
        probs.push_back(to_string(x));
    }
    o.inputs()["probabilities"] = probs;
    json mj = json::array();
    for (const auto& m : ms) {
        mj.push_back(to_string(m));
    }
    o.inputs()["measurements"] = mj;

    auto& text = o.text();
    SetDensityMatrix rho = density_matrix(pi, p);
    const Rational h0 = quantum_logical_entropy(rho);
    json initial{{"partition", to_string(pi)}, {"matrix", rendered(rho)}};
    o.put(initial, "h", h0);
    o.results()["initial"] = initial;
    text << "rho for " << to_string(pi) << ":\n";
    print_grid(text, rendered(rho), "  ");
    text << "h = " << o.show(h0) << "\n";

    json steps = json::array();
    for (const auto& m : ms) {
        const SetDensityMatrix next = luders_update(rho, m);
        json step{{"measure", to_string(m)}, {"partition", to_string(next.partition())}, {"matrix", rendered(next)}};
        o.put(step, "h", quantum_logical_entropy(next));
        o.put(step, "delta", entropy_delta(rho, next));
        o.put(step, "zeroed", zeroed_coherence(rho, next));
        steps.push_back(step);
        text << "after measuring by " << to_string(m) << ":\n";
        print_grid(text, rendered(next), "  ");
        text << "h = " << o.show(quantum_logical_entropy(next)) << ", delta h = " << o.show(entropy_delta(rho, next))
             << ", zeroed = " << o.show(zeroed_coherence(rho, next)) << "\n";
        rho = next;
    }
    o.results()["steps"] = steps;
}

// --- kets ------------------------------------------------------------------

void run_kets(const Options& opt, const std::vector<std::string>& specs, Output& o) {
    const Universe u = require_universe(opt, "kets");
    const auto bases = bases_with_standard(u, specs);
    o.inputs()["universe"] = to_string(u);
    json bj = json::array();
    for (const auto& b : bases) {
        bj.push_back(basis_spec(b));
    }
    o.inputs()["bases"] = bj;

    const KetTable table = ket_table(bases);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header;
    for (const auto& b : bases) {
        header.push_back(b.name());
    }
    cells.push_back(header);
    json rows = json::array();
    for (const auto& row : table.rows) {
        std::vector<std::string> r;
        for (const auto& v : row) {
            r.push_back(to_string(v));
        }
        rows.push_back(r);
        cells.push_back(r);
    }
    o.results()["columns"] = header;
    o.results()["rows"] = rows;
    print_grid(o.text(), cells, "");

    json conv = json::array();
    for (std::size_t k = 1; k < bases.size(); ++k) {
        const BitMatrix to_u = conversion_matrix(bases[k], bases[0]);
        const BitMatrix from_u = conversion_matrix(bases[0], bases[k]);
        conv.push_back({{"from", bases[k].name()}, {"to", bases[0].name()}, {"matrix", matrix_json(to_u)}});
        conv.push_back({{"from", bases[0].name()}, {"to", bases[k].name()}, {"matrix", matrix_json(from_u)}});
        o.text() << "C[" << bases[0].name() << "<-" << bases[k].name() << "] = " << to_string(to_u) << "\n";
        o.text() << "C[" << bases[k].name() << "<-" << bases[0].name() << "] = " << to_string(from_u) << "\n";
    }
    o.results()["conversions"] = conv;
}

// --- commute ---------------------------------------------------------------

struct CommuteArgs {
    std::vector<std::string> attrs;
    std::vector<std::string> bases;
};

void run_commute(const Options& opt, const CommuteArgs& a, Output& o) {
    const Universe u = require_universe(opt, "commute");
    const auto bases = bases_with_standard(u, a.bases);
    const Attribute f = resolve_attribute(a.attrs.at(0), bases);
    const Attribute g = resolve_attribute(a.attrs.at(1), bases);
    const Basis& ref = bases.front();

    o.inputs()["universe"] = to_string(u);
    json bj = json::array();
    for (const auto& b : bases) {
        bj.push_back(basis_spec(b));
    }
    o.inputs()["bases"] = bj;
    json aj = json::array();
    for (const Attribute* x : {&f, &g}) {
        json values = json::object();
        for (std::size_t i = 0; i < x->values().size(); ++i) {
            values[x->basis().labels().label(i)] = to_string(x->value(i));
        }
        aj.push_back({{"basis", x->basis().name()}, {"values", values}});
    }
    o.inputs()["attributes"] = aj;

    auto& text = o.text();
    json pairs = json::array();
    for (const auto& r : f.eigenvalues()) {
        const BitMatrix pr = change_basis(projection_matrix(f.preimage(r)), f.basis(), ref);
        for (const auto& s : g.eigenvalues()) {
            const BitMatrix qs = change_basis(projection_matrix(g.preimage(s)), g.basis(), ref);
            const auto c = commutes(pr, qs);
            pairs.push_back({{"f", to_string(r)},
                             {"g", to_string(s)},
                             {"fg", matrix_json(c.mn)},
                             {"gf", matrix_json(c.nm)},
                             {"commute", c.commute}});
            text << "f = " << to_string(r) << ", g = " << to_string(s) << ": " << to_string(pr) << " * "
                 << to_string(qs) << " = " << to_string(c.mn) << ", reversed " << to_string(c.nm)
                 << (c.commute ? " (commute)" : " (differ)") << "\n";
        }
    }
    const bool commute = attributes_commute(f, g, ref);
    const bool domain = compatible_by_domain(f, g);
    o.results()["pairs"] = pairs;
    o.results()["commute"] = commute;
    o.results()["compatible_by_domain"] = domain;
    text << "commute: " << (commute ? "true" : "false") << "\n";
    text << "compatible_by_domain: " << (domain ? "true" : "false") << "\n";
    const auto w = simultaneous_eigenbasis(f, g, ref);
    if (w) {
        o.results()["eigenbasis"] = basis_spec(*w);
        text << "simultaneous eigenbasis " << basis_spec(*w) << "\n";
    } else {
        o.results()["eigenbasis"] = nullptr;
    }
}

// --- entangle --------------------------------------------------------------

struct EntangleArgs {
    std::string subset;
    std::string right_universe;
    std::vector<std::string> bases;
};

json probability_json(const Output& o, const ProbabilityVector& p, const Universe& u) {
    json j = json::object();
    for (std::size_t i = 0; i < p.size(); ++i) {
        o.put(j, u.label(i), p[i]);
    }
    return j;
}

void run_entangle(const Options& opt, const EntangleArgs& a, Output& o) {
    const Universe left_u = require_universe(opt, "entangle");
    const Universe right_u = a.right_universe.empty() ? left_u : parse_universe(a.right_universe);
    const Basis left = Basis::standard(left_u);
    const Basis right = Basis::standard(right_u);
    const ProductSubset s = parse_product_subset(a.subset, left, right);
    std::vector<Basis> extra;
    for (const auto& spec : a.bases) {
        extra.push_back(parse_basis(spec, left_u));
    }
    o.inputs()["left"] = to_string(left_u);
    o.inputs()["right"] = to_string(right_u);
    o.inputs()["subset"] = to_string(s);

    auto& text = o.text();
    auto& res = o.results();
    const bool sep = is_separated(s);
    const auto [sx, sy] = supports(s);
    res["separated"] = sep;
    res["supports"] = {to_string(sx), to_string(sy)};
    res["bijection_graph"] = is_bijection_graph(s);
    text << to_string(s) << " is " << (sep ? "separated" : "entangled") << "\n";
    text << "supports: " << to_string(sx) << " x " << to_string(sy) << "\n";
    text << "graph of a bijection: " << (is_bijection_graph(s) ? "true" : "false") << "\n";

    const auto joint = equiprobable_joint(s);
    const auto [px, py] = marginals(joint);
    res["marginals"] = {{"left", probability_json(o, px, left_u)}, {"right", probability_json(o, py, right_u)}};
    res["correlated"] = is_correlated(joint);
    o.put(res, "entanglement", entanglement_measure(s));
    std::string lm;
    for (std::size_t i = 0; i < px.size(); ++i) {
        lm += (i ? ", " : "") + left_u.label(i) + "=" + o.show(px[i]);
    }
    std::string rm;
    for (std::size_t i = 0; i < py.size(); ++i) {
        rm += (i ? ", " : "") + right_u.label(i) + "=" + o.show(py[i]);
    }
    text << "marginals: (" << lm << ") and (" << rm << ")\n";
    text << "correlated: " << (is_correlated(joint) ? "true" : "false") << "\n";
    text << "entanglement = " << o.show(entanglement_measure(s)) << "\n";

    json rewrites = json::array();
    for (const auto& b : extra) {
        const Basis& rb = left_u == right_u ? b : right;
        const ProductSubset t = express(s, b, rb);
        rewrites.push_back({{"left", b.name()}, {"right", rb.name()}, {"subset", to_string(t)}});
        text << "in " << b.name() << " x " << rb.name() << ": " << to_string(t) << "\n";
    }
    res["rewrites"] = rewrites;
}

// --- orbits ----------------------------------------------------------------

struct OrbitArgs {
    std::vector<std::string> generators;
    std::vector<std::string> attrs;
    std::size_t range = 0;
    std::size_t cyclic = 0;
    std::string subgroup;
};

void run_orbits(const Options& opt, const OrbitArgs& a, Output& o) {
    auto& text = o.text();
    auto& res = o.results();
    if (a.cyclic > 0) {
        if (a.subgroup.empty()) {
            throw UsageError("--cyclic needs --subgroup");
        }
        const GroupTable g = GroupTable::cyclic(a.cyclic);
        const ElementSet h = parse_subset(a.subgroup, g.elements());
        const Partition cosets = subgroup_orbits(g, h);
        o.inputs()["group"] = "Z" + std::to_string(a.cyclic);
        o.inputs()["subgroup"] = format_subset(h, g.elements());
        res["cosets"] = to_string(cosets);
        text << "right cosets of " << format_subset(h, g.elements()) << " in Z" << a.cyclic << ": "
             << to_string(cosets) << "\n";
        return;
    }
    if (a.range > 0 && !opt.universe.empty()) {
        throw UsageError("give either --range or --universe, not both");
    }
    const Universe u = a.range > 0 ? Universe::range(a.range) : require_universe(opt, "orbits");
    std::vector<Permutation> gens;
    for (const auto& t : a.generators) {
        gens.push_back(parse_permutation(t, u));
    }
    const Basis home = Basis::standard(u);
    std::vector<Attribute> attrs;
    for (const auto& t : a.attrs) {
        attrs.push_back(parse_attribute(t, home));
    }
    o.inputs()["universe"] = to_string(u);
    json gj = json::array();
    for (const auto& g : gens) {
        gj.push_back(to_string(g));
    }
    o.inputs()["generators"] = gj;
    o.inputs()["attributes"] = a.attrs;

    const auto rep = generate(u, gens);
    const Partition orb = orbits(rep);
    res["order"] = rep.order();
    res["orbits"] = to_string(orb);
    text << "group order " << rep.order() << "\n";
    text << "orbits " << to_string(orb) << "\n";
    if (attrs.empty()) {
        return;
    }
    json decs = json::array();
    for (std::size_t k = 0; k < attrs.size(); ++k) {
        json d = json::array();
        std::string line;
        for (const auto& ov : attribute_decomposition(attrs[k], rep)) {
            d.push_back({{"orbit", format_subset(ov.orbit, u)}, {"value", to_string(ov.value)}});
            line += (line.empty() ? "" : ", ") + to_string(ov.value) + " on " + format_subset(ov.orbit, u);
        }
        decs.push_back(d);
        text << "f" << k + 1 << ": " << line << "\n";
    }
    res["decompositions"] = decs;
    const auto c = csca_orbits(attrs, rep);
    json kets = json::array();
    for (const auto& [orbit, tuple] : c.kets) {
        kets.push_back({{"orbit", format_subset(orbit, u)}, {"ket", format_ket(tuple)}});
    }
    res["csca"] = {{"complete", c.complete}, {"kets", kets}};
    text << (c.complete ? "complete" : "incomplete") << " set of commuting attributes\n";
    for (const auto& [orbit, tuple] : c.kets) {
        text << "  " << format_subset(orbit, u) << " = " << format_ket(tuple) << "\n";
    }
    if (!c.complete) {
        res["csca"]["witness"] = {format_subset(c.witness.first, u), format_subset(c.witness.second, u)};
        text << "orbits " << format_subset(c.witness.first, u) << " and " << format_subset(c.witness.second, u)
             << " share a label\n";
    }
}

// --- experiments -----------------------------------------------------------

struct TwoSlitArgs {
    bool no_measurement = false;
    std::string dynamics;
    std::string state;
};

void run_twoslit(const Options& opt, const TwoSlitArgs& a, Output& o) {
    o.inputs()["measure_at_slits"] = !a.no_measurement;
    if (a.dynamics.empty() && a.state.empty() && opt.universe.empty()) {
        report(o, two_slit(!a.no_measurement));
        return;
    }
    const Universe u = opt.universe.empty() ? Universe({"a", "b", "c"}) : parse_universe(opt.universe);
    const Basis b = Basis::standard(u);
    const BitMatrix m = a.dynamics.empty() ? two_slit_dynamics() : parse_bit_matrix(a.dynamics);
    if (a.state.empty() && !opt.universe.empty()) {
        throw UsageError("twoslit with --universe needs --state");
    }
    const BitVector s = parse_ket(a.state.empty() ? "{a,c}" : a.state, b);
    o.inputs()["universe"] = to_string(u);
    o.inputs()["dynamics"] = to_string(m);
    o.inputs()["state"] = to_string(s);
    report(o, two_slit(m, s, !a.no_measurement));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Partition logic, logical entropy and quantum mechanics over sets.", "setqm"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--json", opt.json, "Structured output");
    app.add_flag("--float", opt.approx, "Add decimal approximations");
    app.add_option("--seed", opt.seed, "Seed for sampling");
    app.add_option("--universe", opt.universe, "Universe, e.g. \"{a,b,c}\"");

    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "Lattice operations, dit sets and entropy");
    lattice->add_option("partitions", la.partitions, "One or two partitions")->required()->expected(1, 2);
    lattice->add_flag("--join", la.join);
    lattice->add_flag("--meet", la.meet);
    lattice->add_flag("--implies", la.implies, "first => second");
    lattice->add_flag("--refines", la.refines, "Whether the second partition refines the first");
    lattice->add_flag("--dit", la.dit);
    lattice->add_flag("--entropy", la.entropy);
    lattice->add_option("--probs", la.probs, "Point probabilities, e.g. \"1/2,1/4,1/4\"");

    MeasureArgs ma;
    auto* meas = app.add_subcommand("measure", "Born probabilities and projected states");
    meas->add_option("--state", ma.state)->required();
    meas->add_option("--attr", ma.attr, "e.g. \"a:0,b:1,c:1\"")->required();
    meas->add_option("--basis", ma.bases, "Extra basis, e.g. \"U':a'={a,b};b'={b,c};c'={a,b,c}\"");
    meas->add_option("--outcome", ma.outcome);
    meas->add_flag("--sample", ma.sample, "Draw one outcome using --seed");

    DensityArgs da;
    auto* density = app.add_subcommand("density", "Density matrix, entropy and measurement");
    density->add_option("partition", da.partition)->required();
    density->add_option("--probs", da.probs);
    density->add_option("--measure", da.measurements, "Measure by this partition (repeatable)");

    std::vector<std::string> ket_bases;
    auto* kets = app.add_subcommand("kets", "Ket table over several bases");
    kets->add_option("--basis", ket_bases);

    CommuteArgs ca;
    auto* commute = app.add_subcommand("commute", "Whether two attributes commute");
    commute->add_option("--attr", ca.attrs)->required()->expected(2);
    commute->add_option("--basis", ca.bases);

    EntangleArgs ea;
    auto* entangle = app.add_subcommand("entangle", "Classify a subset of a product");
    entangle->add_option("subset", ea.subset)->required();
    entangle->add_option("--right-universe", ea.right_universe);
    entangle->add_option("--basis", ea.bases);

    OrbitArgs oa;
    auto* orb = app.add_subcommand("orbits", "Orbits of a permutation group and commuting attributes");
    orb->add_option("generators", oa.generators, "Permutations, e.g. \"(0,3)(1,4)(2,5)\"");
    orb->add_option("--range", oa.range, "Universe {0,...,n-1}");
    orb->add_option("--attr", oa.attrs);
    orb->add_option("--cyclic", oa.cyclic, "Cosets in the cyclic group of this order");
    orb->add_option("--subgroup", oa.subgroup);

    TwoSlitArgs ta;
    auto* twoslit = app.add_subcommand("twoslit", "Two-slit experiment");
    twoslit->add_flag("--no-slit-measurement", ta.no_measurement);
    twoslit->add_option("--dynamics", ta.dynamics, "e.g. \"[[1,1,0],[1,1,1],[0,1,1]]\"");
    twoslit->add_option("--state", ta.state);

    auto* bell = app.add_subcommand("bell", "Bell inequality over three bases");
    auto* cascade = app.add_subcommand("cascade", "Stepwise measurement of the uniform indiscrete state");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        Output o(opt, cmd->get_name());
        if (cmd == lattice) {
            run_lattice(opt, la, o);
        } else if (cmd == meas) {
            run_measure(opt, ma, o);
        } else if (cmd == density) {
            run_density(opt, da, o);
        } else if (cmd == kets) {
            run_kets(opt, ket_bases, o);
        } else if (cmd == commute) {
            run_commute(opt, ca, o);
        } else if (cmd == entangle) {
            run_entangle(opt, ea, o);
        } else if (cmd == orb) {
            run_orbits(opt, oa, o);
        } else if (cmd == twoslit) {
            run_twoslit(opt, ta, o);
        } else if (cmd == bell) {
            report(o, bell_experiment());
        } else if (cmd == cascade) {
            report(o, measurement_cascade());
        }
        o.emit(out);
        return 0;
    } catch (const ParseError& e) {
        err << e.annotated() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace setqm::cli
