#pragma once

#include <string>

#include "rcc5/behaviour.hpp"
#include "rcc5/embedding.hpp"
#include "rcc5/network.hpp"
#include "rcc5/ordered_age.hpp"
#include "rcc5/search.hpp"

namespace rcc5 {

// File helpers. read_file throws ParseError when the path cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// All parsers take the raw JSON text of a file and throw ParseError on
// malformed input. All serializers emit pretty-printed JSON with a trailing
// newline; emitted text re-parses to an equal in-memory value.
Instance parse_instance(const std::string& text);
std::string to_json(const Instance& inst);

SetModel parse_model(const std::string& text);
std::string to_json(const SetModel& model);

OrderedStructure parse_ordered_structure(const std::string& text);
std::string to_json(const OrderedStructure& s);

ExpansionSpec parse_expansion_spec(const std::string& text);
std::string to_json(const ExpansionSpec& spec);

// Classifier report: {"verdict": ..., "wedge": table|null, ...} where a
// behaviour table is the flat list of orbit names, first argument most
// significant.
std::string to_json(const ClassifyReport& report);

// Embedding export: atoms in increasing internal order, each image element
// as a sorted list of atom indices.
std::string to_json(const BoolEmbedding& e, const OrderedStructure& s);

}  // namespace rcc5
