// Copyright (c) 2026 roadreq contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface for the requirements engine: corpus statistics,
// ground-truth validation, violation metrics, MaxSAT correction, exact model
// counting, redundancy checking, fuzzy constrained-loss evaluation, and
// DIMACS/WCNF export.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "roadreq/admissibility.hpp"
#include "roadreq/corpus_data.hpp"
#include "roadreq/count.hpp"
#include "roadreq/dimacs.hpp"
#include "roadreq/fuzzy.hpp"
#include "roadreq/jsonl.hpp"
#include "roadreq/maxsat.hpp"
#include "roadreq/requirements.hpp"
#include "roadreq/sat.hpp"

namespace {

using json = nlohmann::json;
using namespace roadreq;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;  // violations / redundancy / infeasible
constexpr int kExitInput = 2;     // unreadable or malformed input

int worker_threads() {
  if (const char* env = std::getenv("ROADREQ_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 256);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The shipped corpus is embedded; --requirements overrides with either the
// brace clause grammar or DIMACS (auto-detected).
RequirementSet load_requirements(const std::string& path) {
  if (path.empty()) return road_requirements();
  std::string text = read_file(path);
  if (looks_like_dimacs(text)) return parse_dimacs(text);
  return parse_requirements(text, road_labels());
}

std::vector<double> load_ap(const std::string& path, int n_labels) {
  json j = json::parse(read_file(path));
  if (!j.is_array() || static_cast<int>(j.size()) != n_labels)
    throw std::runtime_error("AP file must be a JSON array of " + std::to_string(n_labels) +
                             " reals");
  std::vector<double> ap;
  for (const auto& v : j) {
    if (!v.is_number()) throw std::runtime_error("AP entries must be numbers");
    double a = v.get<double>();
    if (a < 0.0 || a > 1.0) throw std::runtime_error("AP values must lie in [0,1]");
    ap.push_back(a);
  }
  return ap;
}

// Writes to the file when given, otherwise to stdout.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

CorrectionPolicy parse_policy(const std::string& s) {
  if (s == "md") return CorrectionPolicy::MinimalDistance;
  if (s == "ap") return CorrectionPolicy::AveragePrecision;
  if (s == "apo") return CorrectionPolicy::AveragePrecisionOutput;
  throw std::runtime_error("--policy must be one of md|ap|apo");
}

TNorm parse_tnorm(const std::string& s) {
  if (s == "product") return TNorm::Product;
  if (s == "goedel") return TNorm::Goedel;
  if (s == "lukasiewicz") return TNorm::Lukasiewicz;
  throw std::runtime_error("--tnorm must be one of product|goedel|lukasiewicz");
}

json stats_to_json(const RequirementStats& st) {
  json buckets = json::array();
  for (const auto& b : st.histogram)
    buckets.push_back({{"length", b.length},
                       {"count", b.count},
                       {"avg_negative", b.avg_negative},
                       {"avg_positive", b.avg_positive}});
  return {{"n_clauses", st.n_clauses},
          {"avg_len", st.avg_len},
          {"n_labels_positive", st.n_labels_positive},
          {"n_labels_negative", st.n_labels_negative},
          {"occurrences", {{"min", st.occ_min}, {"avg", st.occ_avg}, {"max", st.occ_max}}},
          {"histogram", buckets},
          {"total_avg_negative", st.total_avg_negative},
          {"total_avg_positive", st.total_avg_positive}};
}

struct CommonOpts {
  std::string requirements;
  std::string predictions;
  std::string output;
  std::string format = "text";
};

int cmd_stats(const CommonOpts& opt) {
  RequirementSet rs = load_requirements(opt.requirements);
  RequirementStats st = stats(rs);
  OutputSink sink(opt.output);
  std::ostream& out = sink.stream();
  if (opt.format == "json") {
    out << stats_to_json(st).dump(2) << "\n";
    return kExitOk;
  }
  out << std::fixed << std::setprecision(6);
  out << "clauses:                      " << st.n_clauses << "\n";
  out << "avg clause length:            " << st.avg_len << "\n";
  out << "labels appearing positively:  " << st.n_labels_positive << "\n";
  out << "labels appearing negatively:  " << st.n_labels_negative << "\n";
  out << "occurrences min/avg/max:      " << st.occ_min << " / " << st.occ_avg << " / "
      << st.occ_max << "\n";
  out << "histogram by clause length (count, avg negative, avg positive):\n";
  for (const auto& b : st.histogram)
    out << "  n=" << std::setw(2) << b.length << ":  " << std::setw(4) << b.count << "  "
        << b.avg_negative << "  " << b.avg_positive << "\n";
  out << "  total: " << st.n_clauses << "  " << st.total_avg_negative << "  "
      << st.total_avg_positive << "\n";
  return kExitOk;
}

int cmd_validate(const CommonOpts& opt) {
  RequirementSet rs = load_requirements(opt.requirements);
  std::ifstream in(opt.predictions);
  if (!in) throw std::runtime_error("cannot read file: " + opt.predictions);
  ScoreRecordReader reader(in, rs.labels().size());
  OutputSink sink(opt.output);
  long n = 0, bad = 0;
  while (auto rec = reader.next()) {
    ++n;
    if (!rec->ground_truth) {
      std::cerr << "line " << reader.line() << ": record has no \"gt\" field\n";
      return kExitInput;
    }
    ViolationReport rep = check(rs, *rec->ground_truth);
    if (!rep.admissible) {
      ++bad;
      json row = {{"id", rec->scores.id()}, {"violated", rep.violated}};
      sink.stream() << row.dump() << "\n";
    }
  }
  std::cerr << "checked " << n << " ground truths, " << bad << " non-admissible\n";
  return bad == 0 ? kExitOk : kExitSemantic;
}

int cmd_metrics(const CommonOpts& opt, std::vector<double> thetas) {
  RequirementSet rs = load_requirements(opt.requirements);
  if (thetas.empty())
    for (int i = 1; i <= 9; ++i) thetas.push_back(i / 10.0);
  for (double t : thetas)
    if (!(t >= 0.0 && t <= 1.0)) throw std::runtime_error("theta outside [0,1]");

  std::ifstream in(opt.predictions);
  if (!in) throw std::runtime_error("cannot read file: " + opt.predictions);
  ScoreRecordReader reader(in, rs.labels().size());
  std::vector<MetricsAccumulator> accs(thetas.size(), MetricsAccumulator(rs.size()));
  while (auto rec = reader.next())
    for (size_t i = 0; i < thetas.size(); ++i)
      accs[i].add(check(rs, threshold(rec->scores, thetas[i])));

  OutputSink sink(opt.output);
  std::ostream& out = sink.stream();
  if (opt.format == "csv") {
    out << "theta,pct_nonadmissible,avg_violations,pct_constraints_violated\n";
    out << std::setprecision(12);
    for (size_t i = 0; i < thetas.size(); ++i) {
      CorpusMetrics m = accs[i].finalize();
      out << thetas[i] << "," << m.pct_nonadmissible << "," << m.avg_violations << ","
          << m.pct_constraints_violated << "\n";
    }
  } else {
    json rows = json::array();
    for (size_t i = 0; i < thetas.size(); ++i) {
      CorpusMetrics m = accs[i].finalize();
      rows.push_back({{"theta", thetas[i]},
                      {"pct_nonadmissible", m.pct_nonadmissible},
                      {"avg_violations", m.avg_violations},
                      {"pct_constraints_violated", m.pct_constraints_violated}});
    }
    // a single requested threshold reports one object, a sweep reports rows
    out << (rows.size() == 1 ? rows[0] : rows).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_correct(const CommonOpts& opt, double theta, const std::string& policy_name,
                const std::string& ap_path, double eps, double budget, bool has_budget) {
  RequirementSet rs = load_requirements(opt.requirements);
  CorrectionPolicy policy = parse_policy(policy_name);
  std::vector<double> ap;
  if (policy != CorrectionPolicy::MinimalDistance) {
    if (ap_path.empty()) throw std::runtime_error("policy '" + policy_name + "' needs --ap <file>");
    ap = load_ap(ap_path, rs.labels().size());
  }
  std::optional<double> budget_opt;
  if (has_budget) budget_opt = budget;

  std::ifstream in(opt.predictions);
  if (!in) throw std::runtime_error("cannot read file: " + opt.predictions);
  ScoreRecordReader reader(in, rs.labels().size());
  OutputSink sink(opt.output);

  long n = 0, changed = 0, infeasible = 0, total_flips = 0;
  double total_cost = 0.0;
  std::vector<double> item_ms;
  const int threads = worker_threads();
  const size_t batch_size = 512;
  std::vector<ScoreVector> batch;

  auto flush = [&](std::vector<ScoreVector>& items) {
    if (items.empty()) return;
    std::vector<double> ms(items.size());
    std::vector<BoxCorrection> results(items.size());
    auto work = [&](size_t from, size_t to) {
      for (size_t i = from; i < to; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Prediction p = threshold(items[i], theta);
        WeightVector w = compute_weights(policy, items[i], ap, theta);
        auto res = correct(rs, p, w, budget_opt);
        BoxCorrection box;
        box.id = items[i].id();
        if (res) {
          box.adjusted_scores = apply_flips(items[i], res->flipped, theta, eps);
          box.result = std::move(res);
        } else {
          box.adjusted_scores = items[i];
        }
        results[i] = std::move(box);
        ms[i] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
      }
    };
    if (threads <= 1 || items.size() < 2) {
      work(0, items.size());
    } else {
      size_t n_threads = std::min<size_t>(threads, items.size());
      size_t chunk = (items.size() + n_threads - 1) / n_threads;
      std::vector<std::thread> pool;
      for (size_t t = 0; t < n_threads; ++t) {
        size_t from = t * chunk, to = std::min(items.size(), from + chunk);
        if (from >= to) break;
        pool.emplace_back(work, from, to);
      }
      for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < results.size(); ++i) {
      const BoxCorrection& box = results[i];
      ++n;
      item_ms.push_back(ms[i]);
      json row;
      row["id"] = box.id;
      if (box.result) {
        row["flipped"] = box.result->flipped;
        row["cost"] = box.result->cost;
        row["adjusted_scores"] = box.adjusted_scores.values();
        if (!box.result->flipped.empty()) ++changed;
        total_flips += static_cast<long>(box.result->flipped.size());
        total_cost += box.result->cost;
      } else {
        row["infeasible"] = true;
        ++infeasible;
      }
      sink.stream() << row.dump() << "\n";
    }
    items.clear();
  };

  while (auto rec = reader.next()) {
    batch.push_back(std::move(rec->scores));
    if (batch.size() >= batch_size) flush(batch);
  }
  flush(batch);
  if (n == 0) throw std::runtime_error("empty prediction corpus");

  std::sort(item_ms.begin(), item_ms.end());
  double median_ms = item_ms[item_ms.size() / 2];
  double mean_ms = 0.0;
  for (double v : item_ms) mean_ms += v;
  mean_ms /= double(n);
  long feasible = n - infeasible;
  json summary = {{"n_boxes", n},
                  {"n_corrected", changed},
                  {"n_infeasible", infeasible},
                  {"total_flips", total_flips},
                  {"mean_flips", feasible ? double(total_flips) / double(feasible) : 0.0},
                  {"mean_cost", feasible ? total_cost / double(feasible) : 0.0},
                  {"mean_ms_per_box", mean_ms},
                  {"median_ms_per_box", median_ms}};
  std::cerr << summary.dump(2) << "\n";
  return infeasible == 0 ? kExitOk : kExitSemantic;
}

int cmd_count(const CommonOpts& opt) {
  RequirementSet rs = load_requirements(opt.requirements);
  auto t0 = std::chrono::steady_clock::now();
  ModelCount mc = count_models(rs);
  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  OutputSink sink(opt.output);
  if (opt.format == "json") {
    sink.stream() << json{{"count", mc.value.get_str()},
                          {"n_labels", rs.labels().size()},
                          {"n_clauses", rs.size()},
                          {"elapsed_ms", ms}}
                         .dump(2)
                  << "\n";
  } else {
    sink.stream() << mc.value.get_str() << "\n";
    std::cerr << "counted over " << rs.labels().size() << " labels, " << rs.size()
              << " clauses in " << std::setprecision(4) << ms << " ms\n";
  }
  return kExitOk;
}

int cmd_check_redundant(const CommonOpts& opt) {
  RequirementSet rs = load_requirements(opt.requirements);
  std::vector<int> redundant = find_redundant(rs);
  OutputSink sink(opt.output);
  std::ostream& out = sink.stream();
  if (opt.format == "json") {
    out << json{{"redundant", redundant}}.dump(2) << "\n";
  } else if (redundant.empty()) {
    out << "no redundant clauses\n";
  } else {
    for (int i : redundant) {
      out << i;
      const std::string& src = rs.clause(i).source_line();
      if (!src.empty()) out << "  " << src;
      out << "\n";
    }
    std::cerr << redundant.size() << " of " << rs.size()
              << " clauses are entailed by the remaining set\n";
  }
  return redundant.empty() ? kExitOk : kExitSemantic;
}

int cmd_loss(const CommonOpts& opt, const std::string& tnorm_name, double alpha, bool mean,
             bool grad_check) {
  RequirementSet rs = load_requirements(opt.requirements);
  LossConfig cfg;
  cfg.tnorm = parse_tnorm(tnorm_name);
  cfg.alpha = alpha;

  std::ifstream in(opt.predictions);
  if (!in) throw std::runtime_error("cannot read file: " + opt.predictions);
  ScoreRecordReader reader(in, rs.labels().size());
  OutputSink sink(opt.output);
  const bool write_items = !opt.output.empty();

  long n = 0;
  double total = 0.0;
  double max_grad_mismatch = 0.0;
  while (auto rec = reader.next()) {
    ++n;
    LossResult item = loss(rs, rec->scores, cfg);
    total += item.total;
    if (grad_check) {
      const double h = 1e-6;
      for (int j = 0; j < rs.labels().size(); ++j) {
        double lo = std::max(0.0, rec->scores[j] - h);
        double hi = std::min(1.0, rec->scores[j] + h);
        ScoreVector up = rec->scores, down = rec->scores;
        up.set(j, hi);
        down.set(j, lo);
        double fd = (loss(rs, up, cfg).total - loss(rs, down, cfg).total) / (hi - lo);
        max_grad_mismatch = std::max(max_grad_mismatch, std::abs(fd - item.gradient[j]));
      }
    }
    if (write_items) {
      json row = {{"id", rec->scores.id()}, {"loss", item.total}, {"grad", item.gradient}};
      sink.stream() << row.dump() << "\n";
    }
  }
  if (n == 0) throw std::runtime_error("empty prediction corpus");
  json summary = {{"n_items", n},
                  {"aggregate", mean ? "mean" : "sum"},
                  {"loss", mean ? total / double(n) : total}};
  if (grad_check) summary["grad_check_max_discrepancy"] = max_grad_mismatch;
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_export_dimacs(const CommonOpts& opt) {
  RequirementSet rs = load_requirements(opt.requirements);
  OutputSink sink(opt.output);
  sink.stream() << export_dimacs(rs);
  return kExitOk;
}

int cmd_export_wcnf(const CommonOpts& opt, double theta, const std::string& policy_name,
                    const std::string& ap_path, long index) {
  RequirementSet rs = load_requirements(opt.requirements);
  CorrectionPolicy policy = parse_policy(policy_name);
  std::vector<double> ap;
  if (policy != CorrectionPolicy::MinimalDistance) {
    if (ap_path.empty()) throw std::runtime_error("policy '" + policy_name + "' needs --ap <file>");
    ap = load_ap(ap_path, rs.labels().size());
  }
  std::ifstream in(opt.predictions);
  if (!in) throw std::runtime_error("cannot read file: " + opt.predictions);
  ScoreRecordReader reader(in, rs.labels().size());
  long i = 0;
  while (auto rec = reader.next()) {
    if (i++ < index) continue;
    Prediction p = threshold(rec->scores, theta);
    WeightVector w = compute_weights(policy, rec->scores, ap, theta);
    OutputSink sink(opt.output);
    sink.stream() << export_wcnf(rs, p, w);
    return kExitOk;
  }
  throw std::runtime_error("record index " + std::to_string(index) + " out of range");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "roadreq - requirements engine for multi-label classification under CNF constraints"};
  app.require_subcommand(1);
  app.footer(
      "File formats:\n"
      "  requirements   one clause per line: `{ item, item, ... }` with item := [not ]<abbrev>;\n"
      "                 `#` lines are comments. DIMACS CNF is auto-detected as an alternative.\n"
      "  predictions    JSON Lines, one object per box:\n"
      "                 {\"id\": \"...\", \"scores\": [reals in [0,1]], \"gt\": [booleans]}\n"
      "  AP file        JSON array of per-label average precisions in [0,1].\n"
      "Exit codes: 0 success; 1 semantic failure (violations, redundancy, infeasible);\n"
      "2 input error. ROADREQ_THREADS caps the worker pool.");

  CommonOpts opt;
  double theta = 0.5;
  std::vector<double> thetas;
  std::string policy = "md";
  std::string tnorm = "product";
  std::string ap_path;
  double alpha = 1.0;
  double eps = 1e-3;
  double budget = 0.0;
  bool mean = false, grad_check = false;
  long wcnf_index = 0;

  auto add_requirements = [&](CLI::App* sub) {
    sub->add_option("--requirements", opt.requirements,
                    "Requirements file (clause grammar or DIMACS); default: shipped corpus")
        ->check(CLI::ExistingFile);
  };
  auto add_predictions = [&](CLI::App* sub) {
    sub->add_option("--predictions", opt.predictions,
                    "JSON Lines file: {\"id\", \"scores\": [...], \"gt\": [...]}")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "Write the report here instead of stdout");
  };
  auto add_format = [&](CLI::App* sub, const std::string& choices) {
    sub->add_option("--format", opt.format, "Output format: " + choices);
  };

  int rc = kExitOk;

  auto* stats_cmd = app.add_subcommand("stats", "Requirement corpus statistics");
  add_requirements(stats_cmd);
  add_output(stats_cmd);
  add_format(stats_cmd, "text|json");
  stats_cmd->callback([&] { rc = cmd_stats(opt); });

  auto* validate_cmd =
      app.add_subcommand("validate", "Check that every ground truth is admissible");
  add_requirements(validate_cmd);
  add_predictions(validate_cmd);
  add_output(validate_cmd);
  validate_cmd->callback([&] { rc = cmd_validate(opt); });

  auto* metrics_cmd = app.add_subcommand("metrics", "Violation metrics over a prediction corpus");
  add_requirements(metrics_cmd);
  add_predictions(metrics_cmd);
  add_output(metrics_cmd);
  add_format(metrics_cmd, "json|csv");
  metrics_cmd->add_option("--theta", thetas,
                          "Threshold(s); default sweeps 0.1..0.9 in steps of 0.1");
  metrics_cmd->callback([&] {
    opt.format = opt.format == "text" ? "json" : opt.format;
    rc = cmd_metrics(opt, thetas);
  });

  auto* correct_cmd = app.add_subcommand(
      "correct", "Repair predictions into admissible ones via weighted partial MaxSAT");
  add_requirements(correct_cmd);
  add_predictions(correct_cmd);
  add_output(correct_cmd);
  correct_cmd->add_option("--theta", theta, "Decision threshold")->default_val(0.5);
  correct_cmd->add_option("--policy", policy, "Flip-cost policy: md|ap|apo")->default_val("md");
  correct_cmd->add_option("--ap", ap_path, "JSON array of per-label average precisions")
      ->check(CLI::ExistingFile);
  correct_cmd->add_option("--epsilon", eps, "Score adjustment offset")->default_val(1e-3);
  auto* budget_opt = correct_cmd->add_option(
      "--budget", budget, "Report infeasible when the optimal cost exceeds this");
  correct_cmd->callback([&] {
    rc = cmd_correct(opt, theta, policy, ap_path, eps, budget, budget_opt->count() > 0);
  });

  auto* count_cmd = app.add_subcommand("count", "Exact number of admissible predictions");
  add_requirements(count_cmd);
  add_output(count_cmd);
  add_format(count_cmd, "text|json");
  count_cmd->callback([&] { rc = cmd_count(opt); });

  auto* redundant_cmd =
      app.add_subcommand("check-redundant", "Clauses entailed by the remaining set");
  add_requirements(redundant_cmd);
  add_output(redundant_cmd);
  add_format(redundant_cmd, "text|json");
  redundant_cmd->callback([&] { rc = cmd_check_redundant(opt); });

  auto* loss_cmd = app.add_subcommand("loss", "Fuzzy constrained-loss term and gradient");
  add_requirements(loss_cmd);
  add_predictions(loss_cmd);
  add_output(loss_cmd);
  loss_cmd->add_option("--tnorm", tnorm, "product|goedel|lukasiewicz")->default_val("product");
  loss_cmd->add_option("--alpha", alpha, "Regularizer weight")->default_val(1.0);
  loss_cmd->add_flag("--mean", mean, "Average over items instead of summing");
  loss_cmd->add_flag("--grad-check", grad_check,
                     "Compare analytic gradients against central finite differences");
  loss_cmd->callback([&] { rc = cmd_loss(opt, tnorm, alpha, mean, grad_check); });

  auto* dimacs_cmd = app.add_subcommand("export-dimacs", "Requirements as DIMACS CNF");
  add_requirements(dimacs_cmd);
  add_output(dimacs_cmd);
  dimacs_cmd->callback([&] { rc = cmd_export_dimacs(opt); });

  auto* wcnf_cmd = app.add_subcommand(
      "export-wcnf", "One correction instance as weighted DIMACS (hard clauses + soft units)");
  add_requirements(wcnf_cmd);
  add_predictions(wcnf_cmd);
  add_output(wcnf_cmd);
  wcnf_cmd->add_option("--theta", theta, "Decision threshold")->default_val(0.5);
  wcnf_cmd->add_option("--policy", policy, "Flip-cost policy: md|ap|apo")->default_val("md");
  wcnf_cmd->add_option("--ap", ap_path, "JSON array of per-label average precisions")
      ->check(CLI::ExistingFile);
  wcnf_cmd->add_option("--index", wcnf_index, "Zero-based record index")->default_val(0);
  wcnf_cmd->callback([&] { rc = cmd_export_wcnf(opt, theta, policy, ap_path, wcnf_index); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kExitOk : kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const JsonlError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return rc;
}
