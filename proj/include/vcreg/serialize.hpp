#pragma once

#include "vcreg/convexity.hpp"
#include "vcreg/dyadic.hpp"
#include "vcreg/errors.hpp"
#include "vcreg/hypergraph.hpp"
#include "vcreg/instances.hpp"
#include "vcreg/measure.hpp"
#include "vcreg/regularity.hpp"
#include "vcreg/rodl.hpp"
#include "vcreg/stable.hpp"
#include "vcreg/vc.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace vcreg {

using Json = nlohmann::ordered_json;

// Malformed JSON text; carries a 1-based line and column.
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

std::string read_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
// Writes to a temporary file next to `path`, then renames it into place.
void write_file_atomic(const std::string& path, const std::string& text);
std::string dump(const Json& j);   // two-space indent, trailing newline

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const Bitset& s);     // sorted member indices
Bitset bitset_from_json(const Json& j, std::size_t n);
Json to_json(const Tuple& t);
Tuple tuple_from_json(const Json& j);

Json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const Json& j);
Json to_json(const Measure& m);
Json to_json(const ProductMeasure& mu);
// Entries may be weight arrays or the string "uniform"; a missing value means uniform.
ProductMeasure product_measure_from_json(const Json& j, const Hypergraph& h);

Json to_json(const GeneratorSpec& s);
GeneratorSpec generator_spec_from_json(const Json& j);
Json to_json(const Measured& m);

// {"hypergraph", "measures", "measured", "spec"}; a bare hypergraph object is also accepted.
struct Bundle {
    Hypergraph hypergraph;
    ProductMeasure measure;
    std::optional<Json> measured;
    std::optional<Json> spec;
};
Json to_json(const Instance& inst);
Json to_json(const Bundle& b);
Bundle bundle_from_json(const Json& j);
Bundle load_bundle(const std::string& path);

Json to_json(const VcResult& v);
Json to_json(const SauerCheck& s);
Json to_json(const EpsNet& n);
Json to_json(const NetCheck& c);
Json to_json(const DefinableCount& c);

Json to_json(const DeltaPartition& d);
Json to_json(const RectApprox& r);
Json to_json(const RegularPartition& p);
RegularPartition regular_partition_from_json(const Json& j, const Hypergraph& h);
Json to_json(const PartitionReport& r);
Json to_json(const DenseBox& b);

Json to_json(const Ladder& l);
Json to_json(const TreeDepth& t);
Json to_json(const GoodnessReport& g);
Json to_json(const DescentPartition& d);
Json to_json(const StablePartition& s);
Json to_json(const ProductGoodness& p);

Json to_json(const ParityRow& r);
Json to_json(const AntiHomogeneity& a);
Json to_json(const InvolutionReport& r);
Json to_json(const HomogeneousSearch& s);
Json to_json(const BallSearch& s);

}  // namespace vcreg
