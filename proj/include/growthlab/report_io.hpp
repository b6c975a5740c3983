#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthlab/torus.hpp"

namespace growthlab {

/// Defining element, orders and split tag; the full member lists are large
/// and only emitted when asked for.
nlohmann::json torus_record_json(const TorusRecord& t, bool include_members);
std::string split_name(SplitType t);

/// Reproducibility envelope for one CLI run. Report rows carry the manifest
/// id; the id hashes the command, the config snapshot and the master seed,
/// so identical manifests imply identical deterministic row content
/// (wall-clock fields are outside the hashed region).
struct RunManifest {
  std::string tool_version;
  std::string command;
  std::map<std::string, std::string> config;
  uint64_t master_seed = 0;
  std::vector<uint64_t> task_seeds;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;

  std::string id() const;
  nlohmann::json to_json() const;
};

std::string iso8601_now();
std::string fnv1a_hex(const std::string& data);

/// Writes JSON-lines rows and a parallel CSV summary. The JSON stream is
/// the source of truth; the CSV carries a fixed column set for plotting.
class ReportWriter {
 public:
  ReportWriter(const std::string& out_dir, const RunManifest& manifest);

  void write_row(nlohmann::json row);  // manifest id is stamped in here
  void write_csv_header(const std::vector<std::string>& columns);
  void write_csv_row(const std::vector<std::string>& cells);
  void finish(RunManifest manifest);  // records outputs, writes manifest.json

  const std::string& jsonl_path() const { return jsonl_path_; }
  const std::string& csv_path() const { return csv_path_; }

 private:
  std::string dir_;
  std::string jsonl_path_;
  std::string csv_path_;
  std::string manifest_path_;
  std::string manifest_id_;
  std::ofstream jsonl_;
  std::ofstream csv_;
};

}  // namespace growthlab
