#include "vcreg/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vcreg {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key)
{
    try {
        return field(j, key).get<T>();
    } catch (const Json::exception& e) {
        throw InputError(std::string("field \"") + key + "\": " + e.what());
    }
}

template <class T>
Json array_of(const std::vector<T>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(to_json(x));
    return a;
}

Json indices(const std::vector<std::size_t>& xs)
{
    Json a = Json::array();
    for (auto x : xs) a.push_back(x);
    return a;
}

Json opt_rational(const std::optional<Rational>& q) { return q ? to_json(*q) : Json(nullptr); }

Json opt_tuple(const std::optional<Tuple>& t) { return t ? to_json(*t) : Json(nullptr); }

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column)
{
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        throw ParseError(source, line, col, what);
    }
}

Json read_json_file(const std::string& path) { return parse_json(read_file(path), path); }

void write_file_atomic(const std::string& path, const std::string& text)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw InputError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j)
{
    if (!j.is_string()) throw InputError("rationals are written as \"num/den\" strings");
    return parse_rational(j.get<std::string>());
}

Json to_json(const Bitset& s) { return indices(s.indices()); }

Bitset bitset_from_json(const Json& j, std::size_t n)
{
    if (!j.is_array()) throw InputError("expected an array of indices");
    Bitset s(n);
    for (const auto& x : j) {
        if (!x.is_number_unsigned() || x.get<std::size_t>() >= n) throw InputError("index out of range");
        s.set(x.get<std::size_t>());
    }
    return s;
}

Json to_json(const Tuple& t)
{
    Json a = Json::array();
    for (auto x : t) a.push_back(x);
    return a;
}

Tuple tuple_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected a tuple");
    Tuple t;
    for (const auto& x : j) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() > UINT32_MAX) throw InputError("bad tuple entry");
        t.push_back(x.get<std::uint32_t>());
    }
    return t;
}

Json to_json(const Hypergraph& h)
{
    Json j;
    j["k"] = h.k();
    j["part_sizes"] = indices(h.part_sizes());
    j["symmetric"] = h.symmetric();
    j["edges"] = array_of(h.edges());
    return j;
}

Hypergraph hypergraph_from_json(const Json& j)
{
    auto sizes = get<std::vector<std::size_t>>(j, "part_sizes");
    if (j.contains("k") && get<std::size_t>(j, "k") != sizes.size()) throw InputError("k does not match part_sizes");
    bool symmetric = j.contains("symmetric") ? get<bool>(j, "symmetric") : false;
    std::vector<Tuple> edges;
    const Json& e = field(j, "edges");
    if (!e.is_array()) throw InputError("edges must be an array");
    for (const auto& t : e) edges.push_back(tuple_from_json(t));
    return Hypergraph(std::move(sizes), std::move(edges), symmetric);
}

Json to_json(const Measure& m) { return array_of(m.weights()); }

Json to_json(const ProductMeasure& mu) { return array_of(mu.parts()); }

ProductMeasure product_measure_from_json(const Json& j, const Hypergraph& h)
{
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "uniform"))
        return ProductMeasure::uniform(h.part_sizes());
    if (!j.is_array() || j.size() != h.k()) throw InputError("expected one measure per part");
    std::vector<Measure> parts;
    for (std::size_t i = 0; i < h.k(); ++i) {
        const Json& m = j[i];
        if (m.is_string() && m.get<std::string>() == "uniform") {
            parts.push_back(Measure::uniform(h.part_sizes()[i], i));
            continue;
        }
        if (!m.is_array()) throw InputError("measure must be a weight array or \"uniform\"");
        std::vector<Rational> w;
        for (const auto& x : m) w.push_back(rational_from_json(x));
        parts.push_back(Measure::from_weights(w, i));
    }
    ProductMeasure mu(std::move(parts));
    mu.check_against(h);
    return mu;
}

Json to_json(const GeneratorSpec& s)
{
    Json j;
    j["kind"] = to_string(s.kind);
    j["sizes"] = indices(s.sizes);
    j["k"] = s.k;
    j["seed"] = s.seed;
    j["blocks"] = s.blocks;
    j["cap_d"] = s.cap_d;
    j["depth"] = s.depth;
    j["vc_cap"] = s.vc_cap;
    j["ladder_cap"] = s.ladder_cap;
    return j;
}

GeneratorSpec generator_spec_from_json(const Json& j)
{
    GeneratorSpec s;
    s.kind = parse_instance_kind(get<std::string>(j, "kind"));
    s.sizes = get<std::vector<std::size_t>>(j, "sizes");
    s.k = get<std::size_t>(j, "k");
    s.seed = get<std::uint64_t>(j, "seed");
    s.blocks = get<std::size_t>(j, "blocks");
    s.cap_d = get<std::size_t>(j, "cap_d");
    s.depth = get<std::size_t>(j, "depth");
    s.vc_cap = get<std::size_t>(j, "vc_cap");
    s.ladder_cap = get<std::size_t>(j, "ladder_cap");
    return s;
}

Json to_json(const Measured& m)
{
    Json j;
    j["vc_dimension"] = m.vc_dimension;
    j["vc_reached_cap"] = m.vc_reached_cap;
    j["vc_cap"] = m.vc_cap;
    j["ladder_index"] = m.ladder_index;
    j["ladder_reached_cap"] = m.ladder_reached_cap;
    j["ladder_exhausted"] = m.ladder_exhausted;
    j["ladder_cap"] = m.ladder_cap;
    return j;
}

Json to_json(const Instance& inst)
{
    return to_json(Bundle{inst.hypergraph, inst.measure, to_json(inst.measured), to_json(inst.spec)});
}

Json to_json(const Bundle& b)
{
    Json j;
    j["hypergraph"] = to_json(b.hypergraph);
    j["measures"] = to_json(b.measure);
    j["measured"] = b.measured ? *b.measured : Json(nullptr);
    j["spec"] = b.spec ? *b.spec : Json(nullptr);
    return j;
}

Bundle bundle_from_json(const Json& j)
{
    if (!j.is_object()) throw InputError("expected a JSON object");
    if (!j.contains("hypergraph")) {
        Hypergraph h = hypergraph_from_json(j);
        ProductMeasure mu = ProductMeasure::uniform(h.part_sizes());
        return Bundle{std::move(h), std::move(mu), std::nullopt, std::nullopt};
    }
    Hypergraph h = hypergraph_from_json(j.at("hypergraph"));
    ProductMeasure mu = product_measure_from_json(j.contains("measures") ? j.at("measures") : Json(nullptr), h);
    Bundle b{std::move(h), std::move(mu), std::nullopt, std::nullopt};
    if (j.contains("measured") && !j.at("measured").is_null()) b.measured = j.at("measured");
    if (j.contains("spec") && !j.at("spec").is_null()) b.spec = j.at("spec");
    return b;
}

Bundle load_bundle(const std::string& path)
{
    Json j = read_json_file(path);
    try {
        return bundle_from_json(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Json to_json(const VcResult& v)
{
    Json j;
    j["dimension"] = v.dimension;
    j["reached_cap"] = v.reached_cap;
    j["witness"] = indices(v.witness);
    return j;
}

Json to_json(const SauerCheck& s)
{
    Json j;
    j["pi"] = s.pi;
    j["bound"] = to_string(s.bound);
    j["holds"] = s.holds;
    return j;
}

Json to_json(const EpsNet& n)
{
    Json j;
    j["points"] = indices(n.points);
    j["size"] = n.points.size();
    j["eps"] = to_json(n.eps);
    j["verified"] = n.verified;
    j["requested"] = to_string(n.requested);
    j["used"] = to_string(n.used);
    j["attempts"] = n.attempts;
    j["vc"] = n.vc;
    j["size_ln"] = n.size_ln;
    j["size_log2"] = n.size_log2;
    return j;
}

Json to_json(const NetCheck& c)
{
    Json j;
    j["ok"] = c.ok;
    j["unhit"] = c.unhit ? Json(*c.unhit) : Json(nullptr);
    j["heavy"] = c.heavy;
    return j;
}

Json to_json(const DefinableCount& c)
{
    Json j;
    j["count"] = c.count;
    j["bound"] = to_string(c.bound);
    j["dual_vc"] = c.dual_vc;
    j["fiber_vc"] = c.fiber_vc;
    j["within_power"] = c.within_power;
    j["within_bound"] = c.within_bound;
    j["atoms"] = array_of(c.atoms);
    return j;
}

Json to_json(const DeltaPartition& d)
{
    Json j;
    j["fiber_coords"] = indices(d.fiber_coords);
    j["param_coords"] = indices(d.param_coords);
    j["eps"] = to_json(d.eps);
    j["classes"] = array_of(d.classes);
    j["representatives"] = indices(d.representatives);
    j["D"] = indices(d.D);
    j["full_side"] = d.full_side;
    j["net_size"] = d.net_size;
    j["max_distance"] = to_json(d.max_distance);
    return j;
}

Json to_json(const RectApprox& r)
{
    Json j;
    j["eps"] = to_json(r.eps);
    j["error"] = to_json(r.error);
    j["norm"] = r.norm();
    j["top_classes"] = r.top_classes;
    Json boxes = Json::array();
    for (const auto& b : r.boxes) boxes.push_back(array_of(b.sides));
    j["boxes"] = std::move(boxes);
    Json D = Json::array();
    for (const auto& d : r.D) D.push_back(array_of(d));
    j["D"] = std::move(D);
    return j;
}

Json to_json(const RegularPartition& p)
{
    Json j;
    j["eps"] = to_json(p.eps);
    j["size"] = p.size();
    j["box_count"] = p.box_count();
    Json parts = Json::array();
    for (const auto& cls : p.parts) parts.push_back(array_of(cls));
    j["parts"] = std::move(parts);
    Json params = Json::array();
    for (const auto& ps : p.params) params.push_back(array_of(ps));
    j["params"] = std::move(params);
    j["pooled_params"] = p.pooled_params;
    j["sigma"] = array_of(p.sigma);
    j["labels"] = p.labels;
    j["sigma_mass"] = to_json(p.sigma_mass);
    j["rect_error"] = opt_rational(p.rect_error);
    Json bounds = Json::array();
    for (const auto& b : p.bounds)
        bounds.push_back({{"name", b.name}, {"realized", to_json(b.realized)}, {"bound", to_json(b.bound)},
                          {"within", b.within}});
    j["bounds"] = std::move(bounds);
    return j;
}

RegularPartition regular_partition_from_json(const Json& j, const Hypergraph& h)
{
    RegularPartition p;
    p.eps = rational_from_json(field(j, "eps"));
    const Json& parts = field(j, "parts");
    if (!parts.is_array() || parts.size() != h.k()) throw InputError("expected one class list per part");
    for (std::size_t i = 0; i < h.k(); ++i) {
        std::vector<Bitset> cls;
        for (const auto& c : parts[i]) cls.push_back(bitset_from_json(c, h.part_sizes()[i]));
        p.parts.push_back(std::move(cls));
    }
    if (j.contains("params"))
        for (const auto& ps : j.at("params")) {
            std::vector<Tuple> ts;
            for (const auto& t : ps) ts.push_back(tuple_from_json(t));
            p.params.push_back(std::move(ts));
        }
    p.pooled_params = j.contains("pooled_params") && get<bool>(j, "pooled_params");
    if (j.contains("sigma"))
        for (const auto& t : j.at("sigma")) p.sigma.push_back(tuple_from_json(t));
    if (j.contains("labels")) p.labels = get<std::vector<int>>(j, "labels");
    p.sigma_mass = j.contains("sigma_mass") ? rational_from_json(j.at("sigma_mass")) : Rational(0);
    if (j.contains("rect_error") && !j.at("rect_error").is_null()) p.rect_error = rational_from_json(j.at("rect_error"));
    if (j.contains("bounds"))
        for (const auto& b : j.at("bounds"))
            p.bounds.push_back(BoundRow{get<std::string>(b, "name"), rational_from_json(field(b, "realized")),
                                        rational_from_json(field(b, "bound")), get<bool>(b, "within")});
    return p;
}

Json to_json(const PartitionReport& r)
{
    Json j;
    j["ok"] = r.ok();
    j["partition_valid"] = r.partition_valid;
    j["sigma_ok"] = r.sigma_ok;
    j["densities_ok"] = r.densities_ok;
    j["definable_ok"] = r.definable_ok;
    j["sigma_mass"] = to_json(r.sigma_mass);
    j["boxes"] = r.boxes;
    j["zero_boxes"] = r.zero_boxes;
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"detail", x.detail}});
    j["violations"] = std::move(v);
    return j;
}

Json to_json(const DenseBox& b)
{
    Json j;
    j["box"] = array_of(b.box.sides);
    j["classes"] = indices(b.classes);
    j["density"] = to_json(b.density);
    j["mass"] = to_json(b.mass);
    j["side_masses"] = array_of(b.side_masses);
    j["delta_guarantee"] = to_json(b.delta_guarantee);
    j["eps_prime"] = to_json(b.eps_prime);
    j["partition_boxes"] = b.partition_boxes;
    j["partition_size"] = b.partition_size;
    return j;
}

Json to_json(const Ladder& l)
{
    Json j;
    j["fiber_coords"] = indices(l.fiber_coords);
    j["length"] = l.length;
    j["reached_cap"] = l.reached_cap;
    j["exhausted_budget"] = l.exhausted_budget;
    j["a"] = array_of(l.a_tuples);
    j["b"] = array_of(l.b_tuples);
    return j;
}

Json to_json(const TreeDepth& t)
{
    Json j;
    j["depth"] = t.depth;
    j["reached_cap"] = t.reached_cap;
    j["exhausted_budget"] = t.exhausted_budget;
    return j;
}

Json to_json(const GoodnessReport& g)
{
    Json j;
    j["good"] = g.good;
    j["eps"] = to_json(g.eps);
    j["mass"] = to_json(g.mass);
    j["bad_params"] = g.bad_params;
    j["witness"] = opt_tuple(g.witness_tuple);
    j["witness_density"] = opt_rational(g.witness_density);
    return j;
}

Json to_json(const DescentPartition& d)
{
    Json j;
    j["part"] = d.part;
    j["eps"] = to_json(d.eps);
    j["classes"] = array_of(d.classes);
    Json steps = Json::array();
    for (const auto& s : d.steps) {
        Json path = Json::array();
        for (const auto& [t, branch] : s.path) path.push_back({{"param", to_json(t)}, {"branch", branch}});
        steps.push_back(
            {{"path", std::move(path)}, {"mass", to_json(s.mass)}, {"remaining_before", to_json(s.remaining_before)}});
    }
    j["steps"] = std::move(steps);
    j["max_depth"] = d.max_depth;
    j["witnesses"] = array_of(d.witnesses);
    j["residue_merged"] = d.residue_merged;
    j["best_fit_used"] = d.best_fit_used;
    j["d_hat"] = d.d_hat;
    j["d_hat_measured"] = d.d_hat_measured;
    j["precondition_met"] = d.precondition_met;
    j["paper_steps"] = d.paper_steps ? Json(*d.paper_steps) : Json(nullptr);
    return j;
}

Json to_json(const StablePartition& s)
{
    Json j;
    j["partition"] = to_json(s.partition);
    j["descents"] = array_of(s.descents);
    j["eps_inner"] = to_json(s.eps_inner);
    j["rounds_cap"] = s.rounds_cap;
    j["rounds_used"] = s.rounds_used;
    j["splits"] = s.splits;
    j["full_parameter_set"] = s.full_parameter_set;
    j["d_hat"] = s.d_hat;
    j["precondition_met"] = s.precondition_met;
    return j;
}

Json to_json(const ProductGoodness& p)
{
    Json j;
    j["holds"] = p.holds;
    j["b_good"] = p.b_good;
    j["a_splits"] = p.a_splits;
    j["worst"] = opt_tuple(p.worst);
    j["worst_density"] = p.worst ? to_json(p.worst_density) : Json(nullptr);
    return j;
}

Json to_json(const ParityRow& r)
{
    Json j;
    j["prefix_length"] = r.prefix_length;
    j["co_depth"] = r.co_depth;
    j["density"] = to_json(r.density);
    j["limit"] = to_json(r.limit);
    j["deviation"] = to_json(r.deviation);
    j["allowed"] = to_json(r.allowed);
    j["ok"] = r.ok;
    return j;
}

Json to_json(const AntiHomogeneity& a)
{
    Json j;
    j["pair_mass"] = to_json(a.pair_mass);
    j["density"] = to_json(a.density);
    j["mass"] = to_json(a.mass);
    j["gamma"] = to_json(a.gamma);
    j["slack"] = to_json(a.slack);
    j["bound"] = to_json(a.bound);
    j["holds"] = a.holds;
    return j;
}

Json to_json(const InvolutionReport& r)
{
    Json j;
    j["holds"] = r.holds;
    j["triples"] = r.triples;
    j["strict_edges"] = r.strict_edges;
    j["fixed_progressions"] = r.fixed_progressions;
    j["failure"] = r.failure ? Json(*r.failure) : Json(nullptr);
    return j;
}

Json to_json(const HomogeneousSearch& s)
{
    Json j;
    j["found"] = s.found;
    if (s.found) {
        j["set"] = to_json(s.set);
        j["params"] = indices(s.params);
        j["density"] = to_json(s.density);
        j["mass"] = to_json(s.mass);
    } else {
        j["result"] = "NOT-FOUND";
    }
    j["closest"] = to_json(s.closest);
    j["closest_set"] = to_json(s.closest_set);
    j["tuples"] = s.tuples;
    j["sets"] = s.sets;
    j["sampled"] = s.sampled;
    j["budget"] = s.budget;
    return j;
}

Json to_json(const BallSearch& s)
{
    Json j;
    j["found"] = s.found;
    j["ball"] = s.ball ? Json(s.ball->prefix) : Json("NOT-FOUND");
    j["closest"] = to_json(s.closest);
    j["closest_ball"] = s.closest_ball.prefix;
    Json rows = Json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"prefix_length", r.prefix_length}, {"density", to_json(r.density)},
                        {"distance", to_json(r.distance)}});
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace vcreg
