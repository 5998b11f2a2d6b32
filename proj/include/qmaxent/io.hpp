// CSV and JSON emission. Every CSV starts with a comment line recording the
// full config, then a header row; numbers carry 17 significant digits so
// doubles round-trip exactly. JSON mirrors the CSV plus a meta block.
#ifndef QMAXENT_IO_HPP
#define QMAXENT_IO_HPP

#include <string>
#include <vector>

#include "qmaxent/limits.hpp"

namespace qmaxent {

inline constexpr const char* kVersion = "0.1.0";

/// Rows of printable cells; numeric cells should come through fmt17.
struct Table {
  std::string config;               // recorded verbatim in the comment line
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& table);

/// JSON document with {"meta": {config, config_hash, version}, "columns",
/// "rows"} plus optional extra top-level fields supplied as serialized JSON.
std::string to_json(const Table& table, const std::string& extra_json = "");

Table limit_sequence_table(const LimitSequence& seq, const std::string& config);
std::string limit_sequence_json(const LimitSequence& seq, const std::string& config);

void write_file(const std::string& path, const std::string& content);

}  // namespace qmaxent

#endif  // QMAXENT_IO_HPP
