#include "ufc/cli/session.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "ufc/divisibility/divisibility.hpp"
#include "ufc/oracle/oracle.hpp"
#include "ufc/product/product.hpp"
#include "ufc/relext/relation.hpp"
#include "ufc/setalg/render.hpp"

namespace ufc::cli {

namespace {

using json = nlohmann::ordered_json;

class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RunError("cannot read file '" + path + "'");
    std::ostringstream os;
    std::string line;
    while (std::getline(in, line)) os << line.substr(0, line.find('#')) << '\n';
    return os.str();
}

// Whitespace-separated positive integers, or nullopt if anything else appears.
std::optional<std::vector<Nat>> member_list(const std::string& text) {
    std::istringstream in(text);
    std::vector<Nat> out;
    std::string tok;
    while (in >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 19) return std::nullopt;
        const Nat n = std::stoull(tok);
        if (n == 0) return std::nullopt;
        out.push_back(n);
    }
    return out;
}

json proof_json(const Proof& p) {
    json j{{"relation", p.relation == Proof::Relation::Subset ? "subset" : "disjoint"},
           {"lhs", render(p.lhs)},
           {"rhs", render(p.rhs)}};
    if (p.chain_depth) {
        json names = json::array();
        for (const auto& c : p.chains) names.push_back(c.name());
        j["chain_depth"] = *p.chain_depth;
        j["chains"] = std::move(names);
    }
    return j;
}

void put_verdict(json& j, const Verdict& v) {
    j["verdict"] = std::string(outcome_name(v.outcome));
    if (v.witness) j["witness"] = *v.witness;
    if (v.proof) j["proof"] = proof_json(*v.proof);
    if (v.evidence_bound) j["evidence_bound"] = *v.evidence_bound;
    if (v.depth) j["depth"] = *v.depth;
    if (!v.note.empty()) j["note"] = v.note;
}

Status status_of(const Verdict& v) { return v.decided() ? Status::Decided : Status::Unknown; }

Relation table_relation(const std::string& path) {
    std::istringstream in(read_file(path));
    Relation::Pairs pairs;
    std::optional<Nat> universe;
    std::string tok;
    Nat top = 0;
    while (in >> tok) {
        if (tok == "universe") {
            Nat u = 0;
            if (!(in >> u)) throw RunError(path + ": universe needs a number");
            universe = u;
            continue;
        }
        Nat m = 0, n = 0;
        try {
            m = std::stoull(tok);
        } catch (const std::exception&) {
            throw RunError(path + ": expected a number, found '" + tok + "'");
        }
        if (!(in >> n)) throw RunError(path + ": pair starting with " + tok + " has no second element");
        pairs.emplace(m, n);
        top = std::max({top, m, n});
    }
    return Relation::table(std::move(pairs), universe.value_or(top), "table:" + path);
}

Relation parse_relation(const std::string& word) {
    if (word == "div") return Relation::div();
    if (word == "leq") return Relation::leq();
    if (word.rfind("ker:", 0) == 0) {
        const std::string k = word.substr(4);
        Nat v = 0;
        try {
            v = std::stoull(k);
        } catch (const std::exception&) {
            throw RunError("ker:<k> needs a positive modulus, found '" + k + "'");
        }
        if (v == 0) throw RunError("ker:<k> needs a positive modulus, found '0'");
        return Relation::kernel(MapDescriptor::mod_classes(v));
    }
    if (word.rfind("table:", 0) == 0) return table_relation(word.substr(6));
    throw RunError("unknown relation '" + word + "', expected div, leq, ker:<k> or table:<file>");
}

std::string canonical_text(const SetExpr& e) {
    const SetBounds b = evaluate(e);
    if (b.is_exact()) return render(b.lower);
    return e.to_string();
}

Result normalize_doc(json j, const SetExpr& e) {
    const Normalized n = normalize(e);
    if (const auto* p = std::get_if<PeriodicSet>(&n)) {
        j["canonical"] = render(*p);
        return {std::move(j), Status::Decided};
    }
    const auto& bad = std::get<NotRepresentable>(n);
    if (bad.bounds.is_exact()) {
        j["canonical"] = render(bad.bounds.lower);
        j["eventually_periodic"] = false;
        return {std::move(j), Status::Decided};
    }
    j["representable"] = false;
    j["offending"] = bad.offending.to_string();
    j["reason"] = bad.reason;
    j["bounds"] = render(bad.bounds);
    return {std::move(j), Status::Unknown};
}

}  // namespace

Status combine(Status a, Status b) {
    const auto rank = [](Status s) { return s == Status::Error ? 2 : s == Status::Unknown ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

SetExpr to_expr(const SetNode& n, const std::function<SetExpr(const SetNode&)>& lookup) {
    const auto kid = [&](std::size_t i) { return to_expr(n.kids.at(i), lookup); };
    switch (n.kind) {
        case SetNode::Kind::AllN: return SetExpr::all();
        case SetNode::Kind::Multiples: return SetExpr::multiples(n.a);
        case SetNode::Kind::Finite: return SetExpr::finite(n.elems);
        case SetNode::Kind::Primes: return SetExpr::primes();
        case SetNode::Kind::Tail: return SetExpr::tail(n.a);
        case SetNode::Kind::Prog: return SetExpr::progression(n.a, n.b);
        case SetNode::Kind::Not: return !kid(0);
        case SetNode::Kind::And: return kid(0) & kid(1);
        case SetNode::Kind::Or: return kid(0) | kid(1);
        case SetNode::Kind::Quotient: return SetExpr::quotient(kid(0), n.a);
        case SetNode::Kind::Scale: return SetExpr::scale(n.a, kid(0));
        case SetNode::Kind::Up: return SetExpr::up(kid(0));
        case SetNode::Kind::Name: return lookup(n);
    }
    return SetExpr::all();
}

SetExpr Session::resolve(const SetNode& n) const {
    return to_expr(n, [this](const SetNode& name) {
        const auto it = bindings_.find(name.name);
        if (it == bindings_.end()) throw RunError("unbound identifier '" + name.name + "'");
        if (const auto* s = std::get_if<SetExpr>(&it->second)) return *s;
        throw RunError("'" + name.name + "' names a filter, not a set");
    });
}

BaseRef Session::resolve(const PointNode& p) const {
    switch (p.kind) {
        case PointNode::Kind::Principal:
            if (p.n == 0) throw RunError("0 is not a natural number here");
            return FilterBase::principal(p.n);
        case PointNode::Kind::Name: {
            const auto it = bindings_.find(p.name);
            if (it == bindings_.end()) throw RunError("unbound identifier '" + p.name + "'");
            if (const auto* b = std::get_if<BaseRef>(&it->second)) return *b;
            throw RunError("'" + p.name + "' names a set, not a filter");
        }
        case PointNode::Kind::Filter: return build(*p.filter);
    }
    throw RunError("unreachable point kind");
}

BaseRef Session::build(const FilterNode& f) const {
    std::vector<SetExpr> gens;
    for (const auto& g : f.gens) gens.push_back(resolve(g));
    std::vector<Chain> chains;
    if (f.lcm_chain) chains.push_back(Chain::lcm());
    if (f.tail_chain) chains.push_back(Chain::tail());
    return FilterBase::make(std::move(gens), std::move(chains), cfg_);
}

std::optional<Result> Session::run_line(std::string_view line, std::size_t lineno) {
    std::optional<Command> c;
    try {
        c = parse_command(line, lineno);
    } catch (const ParseError& e) {
        json j;
        j["error"] = e.what();
        j["line"] = e.pos().line;
        j["column"] = e.pos().column;
        j["expected"] = e.expected();
        return Result{std::move(j), Status::Error};
    }
    if (!c) return std::nullopt;
    return run(*c);
}

Result Session::run(const Command& c) {
    json j;
    j["cmd"] = std::string(command_name(c.kind));
    j["line"] = c.pos.line;
    try {
        switch (c.kind) {
            case Command::Kind::Def: {
                if (bound(c.name)) throw RunError("'" + c.name + "' is already defined");
                j["name"] = c.name;
                if (c.set) {
                    const SetExpr e = resolve(*c.set);
                    j["kind"] = "set";
                    j["value"] = canonical_text(e);
                    bindings_.emplace(c.name, e);
                } else {
                    const BaseRef b = resolve(c.points.at(0));
                    j["kind"] = "filter";
                    j["value"] = b->describe();
                    if (b->fip_witness()) j["witness"] = *b->fip_witness();
                    bindings_.emplace(c.name, b);
                }
                return {std::move(j), Status::Decided};
            }
            case Command::Kind::Divides: {
                if (c.number == 0) throw RunError("0 is not a natural number here");
                const Verdict v = divides_nat(c.number, *resolve(c.points[0]), cfg_);
                put_verdict(j, v);
                return {std::move(j), status_of(v)};
            }
            case Command::Kind::Widemid:
            case Command::Kind::Leftdiv: {
                const BaseRef p = resolve(c.points[0]);
                const BaseRef q = resolve(c.points[1]);
                const Verdict v = c.kind == Command::Kind::Widemid ? widemid(*p, *q, cfg_) : leftdiv(*p, *q, cfg_);
                put_verdict(j, v);
                return {std::move(j), status_of(v)};
            }
            case Command::Kind::Prodmember: {
                const SetExpr a = resolve(*c.set);
                const Verdict v = product_member(a, *resolve(c.points[0]), *resolve(c.points[1]), cfg_);
                put_verdict(j, v);
                return {std::move(j), status_of(v)};
            }
            case Command::Kind::Relext: {
                const Relation rho = parse_relation(c.word);
                j["relation"] = rho.name();
                const Verdict v = ext_related(rho, *resolve(c.points[0]), *resolve(c.points[1]), cfg_);
                put_verdict(j, v);
                return {std::move(j), status_of(v)};
            }
            case Command::Kind::Fip: {
                const PointNode& pt = c.points[0];
                if (pt.kind != PointNode::Kind::Filter) {
                    const BaseRef b = resolve(pt);
                    j["fip"] = true;
                    j["verdict"] = "entailed";
                    if (b->fip_witness()) j["witness"] = *b->fip_witness();
                    return {std::move(j), Status::Decided};
                }
                std::vector<SetExpr> gens;
                for (const auto& g : pt.filter->gens) gens.push_back(resolve(g));
                std::vector<Chain> chains;
                if (pt.filter->lcm_chain) chains.push_back(Chain::lcm());
                if (pt.filter->tail_chain) chains.push_back(Chain::tail());
                const FipResult r = fip_check(gens, chains, cfg_);
                const bool decided = r.ok || !r.empty_subfamily.empty() || r.chain_depth;
                j["fip"] = r.ok;
                j["verdict"] = decided ? (r.ok ? "entailed" : "refuted") : "unknown";
                if (r.witness) j["witness"] = *r.witness;
                if (!r.ok) {
                    json sub = json::array();
                    for (std::size_t i : r.empty_subfamily) sub.push_back(gens.at(i).to_string());
                    if (decided) {
                        std::string lhs;
                        for (std::size_t i : r.empty_subfamily) lhs += (lhs.empty() ? "" : " & ") + gens.at(i).to_string();
                        if (r.chain_depth) lhs += (lhs.empty() ? "C_" : " & C_") + std::to_string(*r.chain_depth);
                        j["proof"] = {{"relation", "subset"}, {"lhs", lhs}, {"rhs", "!N"}};
                    }
                    j["empty_subfamily"] = std::move(sub);
                    if (r.chain_depth) j["chain_depth"] = *r.chain_depth;
                }
                if (!decided) j["evidence_bound"] = cfg_.oracle_bound;
                if (!r.message.empty()) j["note"] = r.message;
                return {std::move(j), decided ? Status::Decided : Status::Unknown};
            }
            case Command::Kind::Pattern: {
                // One member per line; a set expression is accepted as well.
                const std::string text = read_file(c.word);
                const auto members = member_list(text);
                const SetExpr a = members ? SetExpr::finite(*members) : resolve(parse_set(text));
                const PatternBase pb = PatternBase::build({[a](Nat n) { return a.member(n); }, c.number}, cfg_);
                json pos = json::array(), neg = json::array();
                std::vector<std::size_t> all(pb.size());
                std::iota(all.begin(), all.end(), std::size_t{0});
                for (std::size_t i = 0; i < pb.size(); ++i) (pb.positive(i) ? pos : neg).push_back(pb.index_value(i));
                j["set"] = a.to_string();
                j["bound"] = c.number;
                j["positive"] = std::move(pos);
                j["negative"] = std::move(neg);
                try {
                    const auto w = pb.witness(all);
                    if (!w) throw RunError("lcm of the positive generators meets a negative generator");
                    j["verdict"] = "entailed";
                    j["witness"] = *w;
                    return {std::move(j), Status::Decided};
                } catch (const CapacityError& e) {
                    j["verdict"] = "unknown";
                    j["note"] = e.what();
                    return {std::move(j), Status::Unknown};
                }
            }
            case Command::Kind::Primecheck: {
                const PrimeSplit s = prime_divides_product(c.number, *resolve(c.points[0]), *resolve(c.points[1]), cfg_);
                put_verdict(j, s.verdict);
                j["branch"] = std::string(branch_name(s.branch));
                return {std::move(j), status_of(s.verdict)};
            }
            case Command::Kind::Irred: {
                const Irreducibility r = irreducible_over_P(*resolve(c.points[0]), cfg_);
                if (!r.certificate) {
                    j["verdict"] = "unknown";
                    j["reason"] = r.undecided_reason;
                    return {std::move(j), Status::Unknown};
                }
                const auto& cert = *r.certificate;
                put_verdict(j, cert.primes);
                j["verdict"] = "entailed";
                json recs = json::array();
                bool all_match = true;
                for (const auto& rec : cert.records) {
                    all_match = all_match && rec.matches;
                    if (rec.n <= 12)
                        recs.push_back({{"n", rec.n}, {"case", std::string(case_name(rec.kind))}, {"quotient", render(rec.quotient)}});
                }
                j["records"] = cert.records.size();
                j["records_match"] = all_match;
                j["sample"] = std::move(recs);
                j["conclusion"] = cert.conclusion;
                return {std::move(j), Status::Decided};
            }
            case Command::Kind::Oracle: {
                const SetExpr e = resolve(*c.set);
                const Nat b = c.bound.value_or(cfg_.oracle_bound);
                const auto t = oracle::eval_bounded(e, b);
                j["bound"] = b;
                j["count"] = t.count();
                j["members"] = t.members(display_cap);
                j["truncated"] = t.count() > display_cap;
                return {std::move(j), Status::Decided};
            }
            case Command::Kind::Normalize: return normalize_doc(std::move(j), resolve(*c.set));
        }
    } catch (const FipViolation& e) {
        j["error"] = std::string("FIP violation: ") + e.what();
        json sub = json::array();
        for (std::size_t i : e.result().empty_subfamily) sub.push_back(i);
        j["empty_subfamily"] = std::move(sub);
    } catch (const PatternError& e) {
        j["error"] = e.what();
        j["failed_property"] = e.report().failed_property;
    } catch (const std::exception& e) {
        j["error"] = e.what();
    }
    return {std::move(j), Status::Error};
}

}  // namespace ufc::cli
