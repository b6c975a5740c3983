#include "growthlab/report_io.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>

#include "growthlab/errors.hpp"

namespace growthlab {

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string split_name(SplitType t) {
  switch (t) {
    case SplitType::split: return "split";
    case SplitType::nonsplit: return "nonsplit";
    case SplitType::other: return "other";
  }
  return "other";
}

nlohmann::json torus_record_json(const TorusRecord& t, bool include_members) {
  const GroupSpec& spec = *t.defining.spec;
  nlohmann::json j{
      {"defining", format_matrix(spec, t.defining.m)},
      {"torus_order", t.torus_order},
      {"regular_order", t.regular_part.size()},
      {"split", split_name(t.split_type)},
  };
  if (t.normalizer_order)
    j["normalizer_order"] = *t.normalizer_order;
  else
    j["normalizer_order"] = nullptr;
  if (include_members) {
    nlohmann::json members = nlohmann::json::array();
    for (const Mat& m : t.torus.sorted_mats())
      members.push_back(format_matrix(spec, m));
    nlohmann::json regular = nlohmann::json::array();
    for (const Mat& m : t.regular_part.sorted_mats())
      regular.push_back(format_matrix(spec, m));
    j["members"] = std::move(members);
    j["regular_members"] = std::move(regular);
  }
  return j;
}

std::string RunManifest::id() const {
  // the id captures the computation, not the destination: "out" only moves
  // files around, so it stays outside the hashed region
  std::string blob = command + "\n";
  for (const auto& [k, v] : config)
    if (k != "out") blob += k + "=" + v + "\n";
  blob += "seed=" + std::to_string(master_seed);
  return fnv1a_hex(blob);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["manifest_id"] = id();
  j["tool_version"] = tool_version;
  j["command"] = command;
  j["config"] = config;
  j["master_seed"] = master_seed;
  j["task_seeds"] = task_seeds;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  return j;
}

ReportWriter::ReportWriter(const std::string& out_dir, const RunManifest& manifest)
    : dir_(out_dir) {
  std::filesystem::create_directories(dir_);
  jsonl_path_ = dir_ + "/reports.jsonl";
  csv_path_ = dir_ + "/summary.csv";
  manifest_path_ = dir_ + "/manifest.json";
  manifest_id_ = manifest.id();
  jsonl_.open(jsonl_path_, std::ios::trunc);
  csv_.open(csv_path_, std::ios::trunc);
  if (!jsonl_ || !csv_)
    throw Error("cannot open output files under " + dir_);
}

void ReportWriter::write_row(nlohmann::json row) {
  row["manifest"] = manifest_id_;
  jsonl_ << row.dump() << "\n";
}

void ReportWriter::write_csv_header(const std::vector<std::string>& columns) {
  for (size_t i = 0; i < columns.size(); ++i)
    csv_ << (i ? "," : "") << columns[i];
  csv_ << "\n";
}

void ReportWriter::write_csv_row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) csv_ << (i ? "," : "") << cells[i];
  csv_ << "\n";
}

void ReportWriter::finish(RunManifest manifest) {
  jsonl_.flush();
  csv_.flush();
  manifest.outputs = {jsonl_path_, csv_path_};
  std::ofstream mf(manifest_path_, std::ios::trunc);
  mf << manifest.to_json().dump(2) << "\n";
}

}  // namespace growthlab
