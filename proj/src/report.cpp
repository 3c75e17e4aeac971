#include "beval/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "beval/error.hpp"

namespace beval {

namespace {

using nlohmann::json;

std::string direction_name(DeltaDirection d) {
  switch (d) {
    case DeltaDirection::Drop: return "drop";
    case DeltaDirection::Increase: return "increase";
    case DeltaDirection::Flat: return "flat";
  }
  throw InternalError("unknown delta direction");
}

DeltaDirection direction_from_name(const std::string& name) {
  if (name == "drop") return DeltaDirection::Drop;
  if (name == "increase") return DeltaDirection::Increase;
  if (name == "flat") return DeltaDirection::Flat;
  throw ValidationError("unknown delta direction: " + name);
}

const char* direction_arrow(DeltaDirection d) {
  switch (d) {
    case DeltaDirection::Drop: return "↓";
    case DeltaDirection::Increase: return "↑";
    case DeltaDirection::Flat: return "→";
  }
  throw InternalError("unknown delta direction");
}

// Stable ordering so emitted artifacts do not depend on evaluation order.
bool cell_less(const CrossEvalCell& a, const CrossEvalCell& b) {
  auto key = [](const CrossEvalCell& c) {
    return std::tie(c.class_label, c.model, c.test_dataset_id, c.train_dataset_id);
  };
  return key(a) < key(b);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string class_display_name(ClassLabel label) {
  switch (label) {
    case ClassLabel::Vehicle: return "Vehicle";
    case ClassLabel::Human: return "Human";
    case ClassLabel::DrivableArea: return "Drivable Area";
  }
  throw InternalError("unknown class label");
}

void EvalReport::validate() const {
  std::set<std::tuple<std::string, std::string, std::string, ClassLabel>> seen;
  for (const CrossEvalCell& c : cells) {
    if (!(c.iou >= 0.0 && c.iou <= 1.0))
      throw ValidationError("report cell IoU outside [0,1]");
    if (c.delta.has_value() != c.baseline_iou.has_value())
      throw ValidationError("delta annotation present without a baseline (or vice versa)");
    if (c.delta) {
      double diff = c.iou - *c.baseline_iou;
      DeltaDirection expect = diff < 0   ? DeltaDirection::Drop
                              : diff > 0 ? DeltaDirection::Increase
                                         : DeltaDirection::Flat;
      if (c.delta->direction != expect)
        throw ValidationError("delta direction inconsistent with its sign");
    }
    if (!seen.insert({c.model, c.train_dataset_id, c.test_dataset_id, c.class_label}).second)
      throw ValidationError("duplicate report cell for (" + c.model + ", " +
                            c.train_dataset_id + ", " + c.test_dataset_id + ", " +
                            class_name(c.class_label) + ")");
  }
}

static void compute_deltas_impl(EvalReport& report, const std::vector<CrossEvalCell>& pool) {
  for (CrossEvalCell& cell : report.cells) {
    if (cell.train_dataset_id == cell.test_dataset_id) continue;
    const CrossEvalCell* base = nullptr;
    for (const CrossEvalCell& cand : pool) {
      if (cand.model == cell.model && cand.class_label == cell.class_label &&
          cand.test_dataset_id == cell.test_dataset_id &&
          cand.train_dataset_id == cand.test_dataset_id) {
        base = &cand;
        break;
      }
    }
    if (!base) {
      report.warnings.push_back("no baseline for (" + cell.model + ", " +
                                cell.test_dataset_id + ", " + class_name(cell.class_label) +
                                "); delta omitted");
      continue;
    }
    std::optional<Delta> d = delta_pct(cell.iou, base->iou);
    if (!d) {
      report.warnings.push_back("baseline IoU for (" + cell.model + ", " +
                                cell.test_dataset_id + ", " + class_name(cell.class_label) +
                                ") is not positive; delta omitted");
      continue;
    }
    cell.baseline_iou = base->iou;
    cell.delta = d;
  }
}

void compute_deltas(EvalReport& report) { compute_deltas_impl(report, report.cells); }

void compute_deltas(EvalReport& report, const EvalReport& baselines) {
  compute_deltas_impl(report, baselines.cells);
}

std::string report_to_json(const EvalReport& report) {
  report.validate();
  json meta;
  meta["grid"] = {{"extent", report.metadata.spec.extent},
                  {"resolution", report.metadata.spec.resolution},
                  {"cells_per_side", report.metadata.spec.cells_per_side}};
  json classes = json::array();
  for (ClassLabel c : report.metadata.classes) classes.push_back(class_name(c));
  meta["classes"] = classes;
  meta["threshold"] = report.metadata.threshold;
  meta["aggregation"] = report.metadata.aggregation;
  meta["pipeline_version"] = report.metadata.pipeline_version;
  json counts = json::object();
  for (const auto& [id, n] : report.metadata.sample_counts) counts[id] = n;
  meta["sample_counts"] = counts;
  if (report.metadata.timestamp) meta["timestamp"] = *report.metadata.timestamp;

  std::vector<CrossEvalCell> sorted = report.cells;
  std::sort(sorted.begin(), sorted.end(), cell_less);
  json cells = json::array();
  for (const CrossEvalCell& c : sorted) {
    json jc;
    jc["model"] = c.model;
    jc["train"] = c.train_dataset_id;
    jc["test"] = c.test_dataset_id;
    jc["class"] = class_name(c.class_label);
    jc["iou"] = c.iou;
    if (c.baseline_iou) {
      jc["baseline_iou"] = *c.baseline_iou;
      jc["delta_pct"] = c.delta->pct;
      jc["direction"] = direction_name(c.delta->direction);
    }
    cells.push_back(jc);
  }

  std::vector<std::string> warnings = report.warnings;
  std::sort(warnings.begin(), warnings.end());
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());

  json root;
  root["metadata"] = meta;
  root["cells"] = cells;
  root["warnings"] = warnings;
  return root.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid report JSON: ") + e.what());
  }
  try {
    EvalReport report;
    const json& meta = root.at("metadata");
    const json& grid = meta.at("grid");
    report.metadata.spec = GridSpec::make(grid.at("extent").get<double>(),
                                          grid.at("resolution").get<double>());
    for (const auto& c : meta.at("classes"))
      report.metadata.classes.push_back(class_from_name(c.get<std::string>()));
    report.metadata.threshold = meta.at("threshold").get<double>();
    report.metadata.aggregation = meta.at("aggregation").get<std::string>();
    report.metadata.pipeline_version = meta.at("pipeline_version").get<std::string>();
    for (const auto& [id, n] : meta.at("sample_counts").items())
      report.metadata.sample_counts[id] = n.get<std::uint64_t>();
    if (meta.contains("timestamp"))
      report.metadata.timestamp = meta.at("timestamp").get<std::string>();
    for (const auto& jc : root.at("cells")) {
      CrossEvalCell c;
      c.model = jc.at("model").get<std::string>();
      c.train_dataset_id = jc.at("train").get<std::string>();
      c.test_dataset_id = jc.at("test").get<std::string>();
      c.class_label = class_from_name(jc.at("class").get<std::string>());
      c.iou = jc.at("iou").get<double>();
      if (jc.contains("baseline_iou")) {
        c.baseline_iou = jc.at("baseline_iou").get<double>();
        Delta d;
        d.pct = jc.at("delta_pct").get<double>();
        d.direction = direction_from_name(jc.at("direction").get<std::string>());
        c.delta = d;
      }
      report.cells.push_back(c);
    }
    if (root.contains("warnings"))
      for (const auto& w : root.at("warnings"))
        report.warnings.push_back(w.get<std::string>());
    report.validate();
    return report;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("report JSON missing field: ") + e.what());
  }
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + path.string());
  out << report_to_json(report);
  if (!out) throw IoError("write failed: " + path.string());
}

EvalReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

std::string report_to_csv(const EvalReport& report) {
  report.validate();
  std::vector<CrossEvalCell> sorted = report.cells;
  std::sort(sorted.begin(), sorted.end(), cell_less);
  std::string out = "model,train,test,class,iou,baseline_iou,delta_pct,direction\n";
  for (const CrossEvalCell& c : sorted) {
    out += csv_field(c.model) + "," + csv_field(c.train_dataset_id) + "," +
           csv_field(c.test_dataset_id) + "," + class_name(c.class_label) + "," +
           format_metric(c.iou * 100.0) + ",";
    if (c.baseline_iou) out += format_metric(*c.baseline_iou * 100.0);
    out += ",";
    if (c.delta) out += format_metric(c.delta->pct);
    out += ",";
    if (c.delta) out += direction_name(c.delta->direction);
    out += "\n";
  }
  return out;
}

std::string report_to_plot_csv(const EvalReport& report) {
  report.validate();
  std::vector<CrossEvalCell> sorted = report.cells;
  std::sort(sorted.begin(), sorted.end(), cell_less);
  std::string out = "model,class,train,test,iou\n";
  for (const CrossEvalCell& c : sorted) {
    out += csv_field(c.model) + "," + class_name(c.class_label) + "," +
           csv_field(c.train_dataset_id) + "," + csv_field(c.test_dataset_id) + "," +
           format_metric(c.iou * 100.0) + "\n";
  }
  return out;
}

namespace {

std::string markdown_cell(const CrossEvalCell& c) {
  std::string value = format_metric(c.iou * 100.0);
  if (!c.delta) return value;
  return value + " (" + format_metric(std::abs(c.delta->pct)) + "% " +
         direction_arrow(c.delta->direction) + ")";
}

}  // namespace

std::string report_to_markdown(const EvalReport& report) {
  report.validate();
  std::string out = "# Cross-dataset evaluation\n";

  // Collect the axes in deterministic order.
  std::vector<ClassLabel> classes;
  std::vector<std::string> models, tests;
  for (const CrossEvalCell& c : report.cells) {
    if (std::find(classes.begin(), classes.end(), c.class_label) == classes.end())
      classes.push_back(c.class_label);
    if (std::find(models.begin(), models.end(), c.model) == models.end())
      models.push_back(c.model);
    if (std::find(tests.begin(), tests.end(), c.test_dataset_id) == tests.end())
      tests.push_back(c.test_dataset_id);
  }
  std::sort(classes.begin(), classes.end());
  std::sort(models.begin(), models.end());
  std::sort(tests.begin(), tests.end());

  auto find_cell = [&](const std::string& model, const std::string& train,
                       const std::string& test, ClassLabel label) -> const CrossEvalCell* {
    for (const CrossEvalCell& c : report.cells)
      if (c.model == model && c.train_dataset_id == train && c.test_dataset_id == test &&
          c.class_label == label)
        return &c;
    return nullptr;
  };

  for (ClassLabel label : classes) {
    // Columns: per test dataset, the baseline first, then each cross-trained
    // source (asterisked, as in the published table layout).
    struct Column {
      std::string header;
      std::string train, test;
    };
    std::vector<Column> columns;
    for (const std::string& test : tests) {
      std::vector<std::string> trains;
      bool has_baseline = false;
      for (const CrossEvalCell& c : report.cells) {
        if (c.test_dataset_id != test || c.class_label != label) continue;
        if (c.train_dataset_id == test) has_baseline = true;
        else if (std::find(trains.begin(), trains.end(), c.train_dataset_id) == trains.end())
          trains.push_back(c.train_dataset_id);
      }
      std::sort(trains.begin(), trains.end());
      if (has_baseline) columns.push_back({test, test, test});
      for (const std::string& train : trains) {
        std::string header = test + "*";
        if (trains.size() > 1) header += " (" + train + ")";
        columns.push_back({header, train, test});
      }
    }
    if (columns.empty()) continue;

    out += "\n## " + class_display_name(label) + "\n\n";
    out += "| Model |";
    for (const Column& col : columns) out += " " + col.header + " |";
    out += "\n|---|";
    for (size_t i = 0; i < columns.size(); ++i) out += "---|";
    out += "\n";
    for (const std::string& model : models) {
      out += "| " + (model.empty() ? std::string("-") : model) + " |";
      for (const Column& col : columns) {
        const CrossEvalCell* c = find_cell(model, col.train, col.test, label);
        out += " " + (c ? markdown_cell(*c) : std::string("-")) + " |";
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace beval
