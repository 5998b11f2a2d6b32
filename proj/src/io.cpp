#include "qmaxent/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

std::string to_csv(const Table& table) {
  std::string out;
  out += "# config: " + table.config + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ",";
    out += table.columns[c];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += row[c];
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& table, const std::string& extra_json) {
  nlohmann::json doc;
  doc["meta"] = {{"config", table.config},
                 {"config_hash", fnv1a_hex(table.config)},
                 {"version", kVersion}};
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  if (!extra_json.empty()) {
    const nlohmann::json extra = nlohmann::json::parse(extra_json);
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  }
  return doc.dump(2) + "\n";
}

Table limit_sequence_table(const LimitSequence& seq, const std::string& config) {
  Table t;
  t.config = config;
  t.columns = {"N", "beta", "delta", "T", "p1", "margin"};
  for (const LimitRow& r : seq.rows) {
    if (!r.ok) continue;
    t.rows.push_back({std::to_string(r.n), fmt17(r.beta), fmt17(r.delta),
                      fmt17(r.temperature), fmt17(r.p1), fmt17(r.margin)});
  }
  return t;
}

std::string limit_sequence_json(const LimitSequence& seq, const std::string& config) {
  nlohmann::json fit;
  fit["valid"] = seq.fit.valid;
  if (seq.fit.valid) {
    fit["exponent"] = seq.fit.exponent;
    fit["prefactor"] = seq.fit.prefactor;
  }
  nlohmann::json extra;
  extra["family"] = seq.family_label;
  extra["u"] = seq.u;
  extra["q"] = seq.q;
  extra["fit"] = fit;
  extra["beta_limit"] = seq.beta_limit;
  extra["t_limit"] = seq.t_limit;
  return to_json(limit_sequence_table(seq, config), extra.dump());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qmaxent
