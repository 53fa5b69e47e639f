// Copyright 2026 The mccsplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mccsplat/cli/commands.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "mccsplat/decision.hpp"
#include "mccsplat/error.hpp"
#include "mccsplat/graph.hpp"
#include "mccsplat/propagation.hpp"
#include "mccsplat/random.hpp"
#include "mccsplat/report.hpp"
#include "mccsplat/rule_labeler.hpp"
#include "mccsplat/text.hpp"

namespace mccsplat::cli {

using nlohmann::json;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError(path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  }
  return hex.str();
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const MissingInputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMissingInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DegenerateExperimentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError(path.string());
  return in;
}

const fs::path& require(const std::optional<fs::path>& p, const char* key) {
  if (!p) throw ConfigError(std::string("config is missing [input] ") + key);
  return *p;
}

class Manifest {
 public:
  Manifest(std::string command, fs::path out_dir)
      : command_(std::move(command)), out_dir_(std::move(out_dir)) {
    fs::create_directories(out_dir_);
    body_["command"] = command_;
    body_["inputs"] = json::array();
    body_["outputs"] = json::array();
  }

  void input(const fs::path& path) {
    body_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
  }

  // Writes out_dir/name through `fill` and records it.
  template <typename Fill>
  void output(const std::string& name, Fill&& fill) {
    const fs::path path = out_dir_ / name;
    {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      fill(out);
    }
    body_["outputs"].push_back({{"path", name}, {"sha256", sha256_file(path)}});
  }

  json& operator[](const char* key) { return body_[key]; }

  void write() {
    std::ofstream out(out_dir_ / ("manifest_" + command_ + ".json"), std::ios::binary);
    out << body_.dump(2) << '\n';
  }

 private:
  std::string command_;
  fs::path out_dir_;
  json body_;
};

json run_settings(const RunConfig& cfg) {
  json j = {
      {"flavor", std::string(flavor_name(cfg.decision.flavor))},
      {"max_iterations", cfg.propagation.max_iterations},
      {"epsilon", cfg.propagation.epsilon},
      {"seed", cfg.split.seed},
      {"rng", std::string(kRngName)},
      {"train_fraction", cfg.split.train_fraction},
  };
  j["min_percentile"] = cfg.decision.min_percentile ? json(*cfg.decision.min_percentile)
                                                    : json(nullptr);
  return j;
}

json to_json(const WeightVectord& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Graph plus every attribute that has a label file.
LabeledGraph load_labeled_graph(const RunConfig& cfg, Manifest& manifest,
                                std::ostream& err) {
  const fs::path& edges = require(cfg.edges, "edges");
  auto in = open_input(edges);
  EdgeList el = load_edge_list(in);
  manifest.input(edges);
  if (el.duplicates_dropped || el.self_loops_dropped) {
    err << "warning: dropped " << el.duplicates_dropped << " duplicate edge(s) and "
        << el.self_loops_dropped << " self-loop(s)\n";
  }
  LabeledGraph g{std::move(el.graph), std::move(el.ids), {}, {}};
  for (const auto& a : cfg.attributes) {
    if (!a.labels) {
      err << "warning: attribute '" << a.schema.name() << "' has no label file, skipped\n";
      continue;
    }
    auto lin = open_input(*a.labels);
    LabelLoad ll = load_labels(lin, a.schema, g.ids);
    manifest.input(*a.labels);
    if (ll.skipped) {
      err << "warning: " << a.schema.name() << ": " << ll.skipped
          << " label(s) for vertices absent from the graph skipped\n";
    }
    if (ll.duplicates) {
      err << "warning: " << a.schema.name() << ": " << ll.duplicates
          << " repeated label(s) kept once\n";
    }
    g.schemas.push_back(a.schema);
    g.known.push_back(std::move(ll.labels));
  }
  if (g.schemas.empty()) throw ConfigError("no attribute declares a label file");
  return g;
}

}  // namespace

int cmd_label(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        Manifest manifest("label", cfg.out_dir);
        manifest["settings"] = run_settings(cfg);
        const fs::path& profiles_path = require(cfg.profiles, "profiles");
        auto pin = open_input(profiles_path);
        const auto records = load_profiles(pin);
        manifest.input(profiles_path);

        Ruleset rules;
        if (cfg.rulesets) {
          auto rin = open_input(*cfg.rulesets);
          rules = load_ruleset(rin);
          manifest.input(*cfg.rulesets);
          for (const auto& [attr, r] : rules.by_attribute) {
            if (!cfg.find_attribute(attr)) {
              throw ConfigError("ruleset references undeclared attribute '" + attr + "'");
            }
          }
        }
        std::optional<NameFrequencyTable> names;
        if (cfg.census) {
          auto cin = open_input(*cfg.census);
          auto lin = open_input(require(cfg.last_names, "last_names"));
          names = load_name_table(cin, lin);
          manifest.input(*cfg.census);
          manifest.input(*cfg.last_names);
        }

        json counts = json::object();
        for (const auto& a : cfg.attributes) {
          const AttributeSchema& schema = a.schema;
          ProfileLabels labels;
          auto rit = rules.by_attribute.find(schema.name());
          if (rit != rules.by_attribute.end()) {
            labels = label_profiles(records, rit->second, schema);
          } else if (schema.name() == "sex") {
            if (!names) throw ConfigError("attribute 'sex' needs [input] census");
            for (const auto& r : records) {
              if (auto s = label_sex(r.full_name, *names)) {
                const auto c = schema.class_index(sex_name(*s));
                if (!c) throw ConfigError("attribute 'sex' must declare female and male");
                labels.labels[r.vertex_id] = *c;
              }
            }
          } else if (schema.name() == "age") {
            for (const auto& r : records) {
              if (auto ac = extract_age(r.biography)) {
                const auto c = schema.class_index(kAgeClasses[*ac]);
                if (!c) {
                  throw ConfigError("attribute 'age' must declare teenage, youngster, "
                                    "young, mid-age and elder");
                }
                labels.labels[r.vertex_id] = *c;
              }
            }
          } else {
            err << "warning: no rules for attribute '" << schema.name() << "'\n";
          }

          std::vector<std::size_t> per_class(schema.class_count(), 0);
          manifest.output("labels_" + schema.name() + ".tsv", [&](std::ostream& o) {
            for (const auto& [id, c] : labels.labels) {
              o << id << '\t' << schema.class_name(c) << '\n';
              ++per_class[c];
            }
          });
          manifest.output("conflicts_" + schema.name() + ".tsv", [&](std::ostream& o) {
            for (const auto& id : labels.conflicted) o << id << '\n';
          });
          json ac = json::object();
          for (std::size_t c = 0; c < schema.class_count(); ++c) {
            out << schema.name() << '\t' << schema.class_name(c) << '\t' << per_class[c]
                << '\n';
            ac[schema.class_name(c)] = per_class[c];
          }
          out << schema.name() << "\tconflicted\t" << labels.conflicted.size() << '\n';
          ac["conflicted"] = labels.conflicted.size();
          counts[schema.name()] = ac;
        }
        manifest["counts"] = counts;
        manifest.write();
        return int(kExitOk);
      },
      err);
}

int cmd_propagate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        Manifest manifest("propagate", cfg.out_dir);
        manifest["settings"] = run_settings(cfg);
        const LabeledGraph g = load_labeled_graph(cfg, manifest, err);
        manifest.output("ids.tsv", [&](std::ostream& o) {
          for (Index v = 0; v < g.ids.size(); ++v) o << v << '\t' << g.ids.id(v) << '\n';
        });
        json attrs = json::object();
        bool all_converged = true;
        for (std::size_t a = 0; a < g.schemas.size(); ++a) {
          const auto& schema = g.schemas[a];
          const auto result = run<double>(g.graph, schema, g.known[a], cfg.propagation);
          const bool converged = result.converged(cfg.propagation.epsilon);
          all_converged = all_converged && converged;
          const auto decisions = assign_all(result, g.known[a], cfg.decision);
          manifest.output("assignments_" + schema.name() + ".tsv", [&](std::ostream& o) {
            write_assignments(o, decisions, schema, g.ids, cfg.decision);
          });
          if (cfg.dump_weights) {
            manifest.output("weights_" + schema.name() + ".tsv", [&](std::ostream& o) {
              write_weights_tsv(o, result.final_weights, g.ids);
            });
          }
          std::size_t assigned = 0;
          for (const auto& [v, d] : decisions) {
            if (!g.known[a].contains(v) && !d.is_unknown()) ++assigned;
          }
          attrs[schema.name()] = {
              {"iterations_run", result.iterations_run},
              {"final_residual", result.final_residual},
              {"converged", converged},
              {"sink", result.sink.size() ? to_json(result.sink) : json::array()},
              {"known", g.known[a].size()},
              {"assigned", assigned},
          };
          out << schema.name() << ": " << result.iterations_run << " iteration(s), residual "
              << format_g9(result.final_residual) << (converged ? "" : " (not converged)")
              << ", " << assigned << " vertex(es) assigned\n";
        }
        manifest["attributes"] = attrs;
        manifest["converged"] = all_converged;
        manifest.write();
        return int(kExitOk);
      },
      err);
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        Manifest manifest("evaluate", cfg.out_dir);
        manifest["settings"] = run_settings(cfg);
        const LabeledGraph g = load_labeled_graph(cfg, manifest, err);
        json attrs = json::object();
        for (std::size_t a = 0; a < g.schemas.size(); ++a) {
          const auto& schema = g.schemas[a];
          const Split split = split_train_test(g.known[a], schema.class_count(), cfg.split);
          for (auto c : split.singleton_classes) {
            err << "warning: " << schema.name() << ": class '" << schema.class_name(c)
                << "' has a single member, kept in train\n";
          }
          if (split.test.empty()) {
            throw DegenerateExperimentError("attribute '" + schema.name() +
                                            "' has an empty test partition");
          }
          const auto result = run<double>(g.graph, schema, split.train, cfg.propagation);
          const auto decisions = assign_all(result, split.train, cfg.decision);
          std::map<Index, Decision> predictions;
          for (const auto& [v, c] : split.test) predictions.emplace(v, decisions.at(v));
          const MetricsReport model = evaluate(predictions, split.test, schema);

          const AttributeConfig* ac = cfg.find_attribute(schema.name());
          const std::vector<double> proportions =
              ac && !ac->baseline_counts.empty()
                  ? proportions_from_counts(ac->baseline_counts)
                  : class_proportions(g.known[a], schema.class_count());
          const MetricsReport baseline = random_baseline_expected(proportions, schema);

          const std::string stem = "metrics_" + schema.name();
          manifest.output(stem + "_mccsplat.csv",
                          [&](std::ostream& o) { write_metrics_csv(o, model); });
          manifest.output(stem + "_baseline.csv",
                          [&](std::ostream& o) { write_metrics_csv(o, baseline); });
          manifest.output(stem + ".json", [&](std::ostream& o) {
            o << json{{"mccsplat", metrics_to_json(model)},
                      {"baseline", metrics_to_json(baseline)}}
                     .dump(2)
              << '\n';
          });
          manifest.output("comparison_" + schema.name() + ".csv", [&](std::ostream& o) {
            write_comparison_csv(o, model, baseline);
          });
          attrs[schema.name()] = {
              {"train", split.train.size()},
              {"test", split.test.size()},
              {"iterations_run", result.iterations_run},
              {"final_residual", result.final_residual},
              {"converged", result.converged(cfg.propagation.epsilon)},
              {"macro_precision_relative_difference",
               relative_difference(model.macro_precision, baseline.macro_precision)},
          };
          out << schema.name() << ": macro-P " << format_fixed4(model.macro_precision)
              << " vs baseline " << format_fixed4(baseline.macro_precision)
              << ", micro-P " << format_fixed4(model.micro_precision) << " vs "
              << format_fixed4(baseline.micro_precision) << '\n';
        }
        manifest["attributes"] = attrs;
        manifest.write();
        return int(kExitOk);
      },
      err);
}

int cmd_sweep(const RunConfig& cfg, const std::vector<double>& fractions,
              std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const std::vector<double>& list = fractions.empty() ? cfg.sweep_fractions : fractions;
        if (list.empty()) throw ConfigError("no sweep fractions given");
        Manifest manifest("sweep", cfg.out_dir);
        manifest["settings"] = run_settings(cfg);
        manifest["fractions"] = list;
        const LabeledGraph g = load_labeled_graph(cfg, manifest, err);
        for (const auto& schema : g.schemas) {
          const auto rows = exposure_sweep(g, schema.name(), list, cfg.decision,
                                           cfg.propagation, cfg.split.seed);
          manifest.output("sweep_" + schema.name() + ".csv", [&](std::ostream& o) {
            write_sweep_csv(o, rows, cfg.split.seed);
          });
          for (const auto& r : rows) {
            out << schema.name() << '\t' << format_g9(r.fraction) << '\t'
                << sweep_status_name(r.status) << "\tmacro-P "
                << format_fixed4(r.metrics.macro_precision) << '\n';
          }
        }
        manifest.write();
        return int(kExitOk);
      },
      err);
}

int cmd_synth(const SyntheticSpec& spec, const fs::path& out_dir, std::ostream& out,
              std::ostream& err) {
  return guarded(
      [&] {
        const LabeledGraph g = generate_synthetic(spec);
        Manifest manifest("synth", out_dir);
        std::vector<std::size_t> sizes(spec.class_sizes.begin(), spec.class_sizes.end());
        manifest["settings"] = {{"class_sizes", sizes},
                                {"homophily", spec.homophily},
                                {"mean_out_degree", spec.mean_out_degree},
                                {"seed", spec.seed},
                                {"rng", std::string(kRngName)}};
        manifest.output("edges.tsv",
                        [&](std::ostream& o) { write_edge_list(o, g.graph, g.ids); });
        manifest.output("labels_class.tsv", [&](std::ostream& o) {
          write_labels(o, g.known[0], g.schemas[0], g.ids);
        });
        manifest.output("synth.ini", [&](std::ostream& o) {
          o << "[input]\nedges = edges.tsv\n\n[attribute:class]\nclasses = ";
          const auto& classes = g.schemas[0].classes();
          for (std::size_t c = 0; c < classes.size(); ++c) {
            o << (c ? "," : "") << classes[c];
          }
          o << "\nlabels = labels_class.tsv\n\n[split]\nseed = " << spec.seed
            << "\nrng = " << kRngName << "\n";
        });
        manifest["vertices"] = g.graph.vertex_count();
        manifest["edges"] = g.graph.edge_count();
        manifest.write();
        out << "wrote " << g.graph.vertex_count() << " vertices, " << g.graph.edge_count()
            << " edges to " << out_dir.string() << '\n';
        return int(kExitOk);
      },
      err);
}

}  // namespace mccsplat::cli
