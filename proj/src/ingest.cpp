#include "motionar/bench/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "motionar/error.hpp"
#include "motionar/metrics/metrics.hpp"

namespace motionar::bench {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

nlohmann::json read_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("sidecar not found: expected " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

pose::PoseSequence ingest(const std::filesystem::path& csv) {
  const auto side_path = sidecar_path(csv);
  const nlohmann::json side = read_sidecar(side_path);

  pose::PoseSequence seq;
  Eigen::Index dims = 0;
  bool normalize = false;
  std::optional<std::filesystem::path> skeleton_path;
  try {
    seq.representation = pose::representation_from_string(side.at("representation").get<std::string>());
    seq.fps = side.value("fps", 25.0);
    dims = side.at("dims").get<Eigen::Index>();
    seq.subject_id = side.value("subject_id", std::string());
    seq.action = side.value("action", std::string());
    seq.euler_order = side.value("euler_order", std::string(pose::kEulerOrder));
    normalize = side.value("normalize", false);
    if (side.contains("skeleton")) skeleton_path = side_path.parent_path() / side.at("skeleton").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(side_path.string() + ": " + e.what());
  }
  if (dims < 1) throw SchemaError(side_path.string() + ": dims must be >= 1");
  if (seq.euler_order != pose::kEulerOrder) {
    throw SchemaError(side_path.string() + ": euler_order " + seq.euler_order + " is not supported (only " +
                      std::string(pose::kEulerOrder) + ")");
  }

  std::ifstream in(csv);
  if (!in) throw ConfigError("cannot open " + csv.string());
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      if (static_cast<Eigen::Index>(fields.size()) != dims) {
        throw SchemaError(csv.string() + ": header has " + std::to_string(fields.size()) +
                          " columns, sidecar declares dims = " + std::to_string(dims));
      }
      for (auto f : fields) seq.dim_labels.emplace_back(trim(f));
      have_header = true;
      continue;
    }
    ++rows;
    if (static_cast<Eigen::Index>(fields.size()) != dims) {
      throw ParseError(csv.string() + ": row " + std::to_string(rows) + " has " + std::to_string(fields.size()) +
                           " values, expected " + std::to_string(dims),
                       line_no);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        throw ParseError(csv.string() + ": row " + std::to_string(rows) + ", column " + seq.dim_labels[c] +
                             ": cannot parse \"" + std::string(trim(fields[c])) + "\"",
                         line_no);
      }
      if (!std::isfinite(*v)) {
        throw ParseError(csv.string() + ": row " + std::to_string(rows) + ", column " + seq.dim_labels[c] +
                             ": non-finite value",
                         line_no);
      }
      values.push_back(*v);
    }
  }
  if (!have_header) throw SchemaError(csv.string() + ": empty file");
  if (rows == 0) throw SchemaError(csv.string() + ": no frames");
  seq.frames = Eigen::Map<const pose::Frames>(values.data(), static_cast<Eigen::Index>(rows), dims);
  seq.validate();

  if (normalize) {
    if (!skeleton_path) throw SchemaError(side_path.string() + ": normalize needs a skeleton");
    seq = pose::center_and_normalize(seq, pose::Skeleton::load(*skeleton_path));
  }
  return seq;
}

void write_sequence(const std::filesystem::path& csv, const pose::PoseSequence& seq) {
  seq.validate();
  std::ofstream out(csv);
  if (!out) throw ConfigError("cannot write " + csv.string());
  for (Eigen::Index d = 0; d < seq.dims(); ++d) {
    if (d > 0) out << ',';
    out << (seq.dim_labels.empty() ? "d" + std::to_string(d) : seq.dim_labels[static_cast<std::size_t>(d)]);
  }
  out << '\n';
  for (Eigen::Index t = 0; t < seq.length(); ++t) {
    for (Eigen::Index d = 0; d < seq.dims(); ++d) {
      if (d > 0) out << ',';
      out << metrics::format_double(seq.frames(t, d));
    }
    out << '\n';
  }
  const nlohmann::json side{{"representation", std::string(pose::to_string(seq.representation))},
                            {"fps", seq.fps},
                            {"dims", seq.dims()},
                            {"subject_id", seq.subject_id},
                            {"action", seq.action},
                            {"euler_order", seq.euler_order}};
  std::ofstream sout(sidecar_path(csv));
  if (!sout) throw ConfigError("cannot write " + sidecar_path(csv).string());
  sout << side.dump(2) << '\n';
}

std::vector<NamedSequence> load_dataset(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
      }
    } else if (std::filesystem::exists(p)) {
      files.push_back(p);
    } else {
      throw ConfigError("no such file or directory: " + p.string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedSequence> out;
  for (const auto& f : files) out.push_back({f.stem().string(), f, ingest(f)});
  return out;
}

std::vector<NamedSequence> select_subjects(const std::vector<NamedSequence>& all, const std::vector<std::string>& ids) {
  std::vector<NamedSequence> out;
  for (const auto& s : all) {
    if (std::find(ids.begin(), ids.end(), s.sequence.subject_id) != ids.end()) out.push_back(s);
  }
  return out;
}

}  // namespace motionar::bench
