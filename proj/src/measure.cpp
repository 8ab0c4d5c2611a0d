#include "setqm/measure.hpp"

#include <algorithm>

#include "scanner.hpp"
#include "setqm/error.hpp"

namespace setqm {

Attribute::Attribute(Basis home, std::vector<Rational> values) : basis_(std::move(home)), values_(std::move(values)) {
    if (values_.size() != basis_.dimension()) {
        throw DomainError("attribute needs one value per element of basis " + basis_.name());
    }
}

Attribute Attribute::from_map(Basis home, const std::map<std::string, Rational>& values) {
    std::vector<Rational> v(home.dimension());
    std::vector<bool> set(home.dimension(), false);
    for (const auto& [label, value] : values) {
        const std::size_t i = home.labels().index_of(label);
        v[i] = value;
        set[i] = true;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (!set[i]) {
            throw DomainError("attribute has no value for '" + home.labels().label(i) + "'");
        }
    }
    return Attribute(std::move(home), std::move(v));
}

Attribute Attribute::characteristic(const BitVector& s) {
    std::vector<Rational> v(s.basis().dimension());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = s.contains(i) ? 1 : 0;
    }
    return Attribute(s.basis(), std::move(v));
}

Attribute Attribute::from_partition(Basis home, const Partition& pi) {
    if (!(pi.universe() == home.labels())) {
        throw DomainError("partition is not over the labels of basis " + home.name());
    }
    std::vector<Rational> v(home.dimension());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = static_cast<long>(pi.block_of(i));
    }
    return Attribute(std::move(home), std::move(v));
}

Attribute Attribute::on_universe(const Universe& u, std::vector<Rational> values) {
    return Attribute(Basis::standard(u), std::move(values));
}

std::vector<Rational> Attribute::eigenvalues() const {
    std::vector<Rational> out = values_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BitVector Attribute::preimage(const Rational& r) const {
    Mask m = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == r) {
            m |= Mask{1} << i;
        }
    }
    return BitVector(basis_, m);
}

Attribute parse_attribute(std::string_view text, const Basis& home) {
    detail::Scanner in(text);
    std::map<std::string, Rational> values;
    do {
        in.skip_space();
        const std::size_t at = in.position();
        std::string label = in.label();
        if (!home.labels().find(label)) {
            in.fail_at("'" + label + "' is not an element of basis " + home.name(), at);
        }
        in.expect(':');
        in.skip_space();
        const std::size_t value_at = in.position();
        const std::string_view raw = in.until(",");
        try {
            if (!values.emplace(label, parse_rational(raw)).second) {
                in.fail_at("value for '" + label + "' given twice", at);
            }
        } catch (const ParseError& e) {
            in.fail_at(e.what(), value_at + e.position());
        }
    } while (in.accept(','));
    in.expect_end();
    if (values.size() != home.dimension()) {
        for (const auto& l : home.labels().labels()) {
            if (!values.count(l)) {
                in.fail_at("no value for '" + l + "'", text.size());
            }
        }
    }
    return Attribute::from_map(home, values);
}

const Outcome* OutcomeDistribution::find(const Rational& value) const {
    for (const auto& o : outcomes) {
        if (o.value == value) {
            return &o;
        }
    }
    return nullptr;
}

Rational OutcomeDistribution::total() const {
    Rational t = 0;
    for (const auto& o : outcomes) {
        t += o.probability;
    }
    return t;
}

std::size_t bracket(const BitVector& t, const BitVector& s) {
    require_same_basis(t, s);
    return BitVector(s.basis(), t.bits() & s.bits()).count();
}

std::size_t norm_squared(const BitVector& s) {
    return bracket(s, s);
}

std::size_t norm_squared(const BitVector& s, const Basis& basis) {
    return norm_squared(express(s, basis));
}

namespace {

void require_home(const BitVector& s, const Attribute& f) {
    if (!(s.basis() == f.basis())) {
        throw DomainError("state is written in basis " + s.basis().name() + " but the attribute lives on basis " +
                          f.basis().name());
    }
}

}  // namespace

OutcomeDistribution born(const BitVector& s, const Attribute& f) {
    require_home(s, f);
    if (s.empty()) {
        throw DomainError("cannot measure the empty state");
    }
    const auto size = static_cast<long>(s.count());
    OutcomeDistribution dist;
    for (const auto& r : f.eigenvalues()) {
        BitVector post(s.basis(), f.preimage(r).bits() & s.bits());
        if (!post.empty()) {
            dist.outcomes.push_back({r, Rational(static_cast<long>(post.count()), size), std::move(post)});
        }
    }
    return dist;
}

BitVector measure(const BitVector& s, const Attribute& f, const Rational& r) {
    const auto dist = born(s, f);
    if (const Outcome* o = dist.find(r)) {
        return o->post_state;
    }
    throw DomainError("outcome " + to_string(r) + " has probability zero in state " + to_string(s));
}

Partition attribute_partition(const Attribute& f) {
    return Partition::from_keys(f.basis().labels(), f.values());
}

namespace {

std::vector<BitMatrix> projections_in(const Attribute& f, const Basis& reference) {
    std::vector<BitMatrix> out;
    for (const auto& r : f.eigenvalues()) {
        out.push_back(change_basis(projection_matrix(f.preimage(r)), f.basis(), reference));
    }
    return out;
}

}  // namespace

bool attributes_commute(const Attribute& f, const Attribute& g, const Basis& reference) {
    const auto pf = projections_in(f, reference);
    const auto pg = projections_in(g, reference);
    for (const auto& p : pf) {
        for (const auto& q : pg) {
            if (!commutes(p, q).commute) {
                return false;
            }
        }
    }
    return true;
}

bool compatible_by_domain(const Attribute& f, const Attribute& g) {
    return f.basis().same_vectors_as(g.basis());
}

std::optional<Basis> simultaneous_eigenbasis(const Attribute& f, const Attribute& g, const Basis& reference,
                                             std::string name) {
    if (!attributes_commute(f, g, reference)) {
        return std::nullopt;
    }
    const auto pf = projections_in(f, reference);
    const auto pg = projections_in(g, reference);
    const BitMatrix to_reference_coords = reference.matrix();
    // The products P_r Q_s are commuting idempotents summing to I, so their
    // images split the space; a column basis of each image is a basis of
    // simultaneous eigenvectors.
    std::vector<Mask> chosen;
    std::vector<Mask> reduced;
    std::vector<Mask> leads;
    for (const auto& p : pf) {
        for (const auto& q : pg) {
            const BitMatrix pq = p * q;
            for (std::size_t j = 0; j < pq.cols(); ++j) {
                const Mask col = pq.column(j);
                Mask v = col;
                for (std::size_t k = 0; k < reduced.size(); ++k) {
                    if (v & leads[k]) {
                        v ^= reduced[k];
                    }
                }
                if (v == 0) {
                    continue;
                }
                const Mask lead = v & (~v + 1);
                for (auto& r : reduced) {
                    if (r & lead) {
                        r ^= v;
                    }
                }
                reduced.push_back(v);
                leads.push_back(lead);
                chosen.push_back(to_reference_coords.apply(col));
            }
        }
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        labels.push_back("e" + std::to_string(i + 1));
    }
    return validate_basis(std::move(name), std::move(labels), reference.reference(), chosen);
}

CscaResult csca_check(const std::vector<Attribute>& attributes) {
    if (attributes.empty()) {
        throw DomainError("CSCA check needs at least one attribute");
    }
    const Basis& home = attributes.front().basis();
    Partition joined = Partition::indiscrete(home.labels());
    for (const auto& f : attributes) {
        if (!(f.basis() == home)) {
            throw DomainError("attributes in a CSCA must share one home basis");
        }
        joined = join(joined, attribute_partition(f));
    }
    CscaResult result;
    if (!joined.is_discrete()) {
        for (const auto& block : joined.blocks()) {
            if (block.size() > 1) {
                result.witness = block;
                break;
            }
        }
        return result;
    }
    result.complete = true;
    for (std::size_t i = 0; i < home.dimension(); ++i) {
        std::vector<Rational> ket;
        for (const auto& f : attributes) {
            ket.push_back(f.value(i));
        }
        result.kets.push_back(std::move(ket));
    }
    return result;
}

std::string format_ket(const std::vector<Rational>& values) {
    std::string out = "|";
    for (std::size_t k = 0; k < values.size(); ++k) {
        out += (k ? "," : "") + to_string(values[k]);
    }
    return out + ">";
}

}  // namespace setqm
