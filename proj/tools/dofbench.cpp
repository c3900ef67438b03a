// Command-line front end: exact alignment checks, SNR sweeps, the entropy
// inequality prover and the converse certificate.

#include "dofbench/alignment.hpp"
#include "dofbench/entropy/bounds.hpp"
#include "dofbench/entropy/dof_certificate.hpp"
#include "dofbench/entropy/parser.hpp"
#include "dofbench/entropy/prover.hpp"
#include "dofbench/network.hpp"
#include "dofbench/network_json.hpp"
#include "dofbench/snr_sim.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t seed = 0;
  bool json = false;
  std::string out;

  std::string channel;
  int cluster_size = 2;
  int max_exponent = 2;
  std::vector<double> snr_db{40, 50, 60, 70, 80, 90};
  double fit_min_db = 40.0;
  std::string inequality_file;
  std::string mode = "mi-only";
  std::vector<std::string> dropped;
  std::string weight = "1";
  int users = 4;
  int cluster = 2;
  int extension = 5;
  std::string connectivity = "local";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate_paths(const RunConfig& cfg) {
  for (const auto& in : {cfg.channel, cfg.inequality_file})
    if (!in.empty() && !std::filesystem::is_regular_file(in)) throw UsageError("no such file: " + in);
  if (!cfg.out.empty()) {
    const auto parent = std::filesystem::path(cfg.out).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) throw UsageError("output directory missing: " + parent.string());
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + cfg.out);
  file << text;
}

dofbench::ChannelRealization load_channel(const RunConfig& cfg) {
  if (cfg.channel.empty()) return dofbench::build_example_channel();
  std::ifstream in(cfg.channel);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("cannot parse channel file: ") + e.what());
  }
  try {
    return dofbench::channel_from_json(doc, cfg.cluster_size);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

dofbench::NetworkTopology decoding_topology(const dofbench::ChannelRealization& channel, int cluster_size) {
  const auto& t = channel.topology();
  try {
    return dofbench::build_topology(t.users(), t.connectivity(), cluster_size);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void require_example_shape(const dofbench::ChannelRealization& channel) {
  if (channel.topology().users() != 4 || channel.extension() != 5)
    throw UsageError("the example scheme needs K = 4 and T = 5");
}

int cmd_verify_example(const RunConfig& cfg) {
  const auto channel = load_channel(cfg);
  require_example_shape(channel);
  const auto report =
      dofbench::alignment_report(channel, decoding_topology(channel, cfg.cluster_size), dofbench::example_scheme());
  const bool verified = report.dof && *report.dof == dofbench::Rational(12, 5);
  if (cfg.json) {
    emit(cfg, dofbench::to_json(report).dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (const auto& d : report.decoders) {
      out << "decoder " << d.decoder << ": streams " << d.streams << ", interference rank " << d.interference_rank
          << ", joint rank " << d.joint_rank << (d.decodable ? ", decodable" : ", NOT decodable") << "\n";
    }
    if (report.dof) {
      out << "dof " << dofbench::to_string(*report.dof) << "\n";
    } else {
      out << "not decodable; failing decoders:";
      for (int k : report.failing_decoders()) out << ' ' << k;
      out << "\n";
    }
    emit(cfg, out.str());
  }
  return verified ? kExitOk : kExitNegative;
}

int cmd_search(const RunConfig& cfg) {
  if (cfg.max_exponent < 0) throw UsageError("--max-exponent must be nonnegative");
  const auto found = dofbench::search_power_assignment(cfg.max_exponent);
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& a : found)
    assignments.push_back({{"direct", a.direct}, {"next", a.next}, {"previous", a.previous}, {"dof", "12/5"}});
  const nlohmann::json doc{{"max_exponent", cfg.max_exponent},
                           {"searched", (cfg.max_exponent + 1) * (cfg.max_exponent + 1) * (cfg.max_exponent + 1)},
                           {"assignments", assignments}};
  emit(cfg, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.snr_db.empty()) throw UsageError("empty --snr-db grid");
  for (std::size_t i = 1; i < cfg.snr_db.size(); ++i)
    if (!(cfg.snr_db[i] > cfg.snr_db[i - 1])) throw UsageError("--snr-db must be strictly increasing");
  const auto channel = load_channel(cfg);
  require_example_shape(channel);
  std::vector<double> rhos;
  for (double db : cfg.snr_db) rhos.push_back(dofbench::db_to_linear(db));
  const auto report = dofbench::sweep(channel, decoding_topology(channel, cfg.cluster_size), dofbench::example_scheme(),
                                      rhos, dofbench::db_to_linear(cfg.fit_min_db));
  emit(cfg, dofbench::to_csv(report) + dofbench::summary_json(report).dump() + "\n");
  return kExitOk;
}

int cmd_prove(const RunConfig& cfg) {
  namespace en = dofbench::entropy;
  en::ElementalMode mode;
  try {
    mode = en::parse_mode(cfg.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ifstream in(cfg.inequality_file);
  en::InequalityProblem problem;
  try {
    problem = en::parse_inequality_file(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto outcome = en::prove(problem.target, problem.constraints, mode);
  auto doc = en::to_json(outcome);
  doc["target"] = problem.target.to_string() + " >= 0";
  nlohmann::json constraints = nlohmann::json::array();
  for (const auto& c : problem.constraints) constraints.push_back(c.to_string() + " = 0");
  doc["constraints"] = constraints;
  emit(cfg, doc.dump(2) + "\n");
  return outcome.provable() ? kExitOk : kExitNegative;
}

int cmd_certificate(const RunConfig& cfg) {
  namespace en = dofbench::entropy;
  dofbench::Rational weight;
  try {
    weight = dofbench::parse_rational(cfg.weight);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (weight <= 0) throw UsageError("--weight must be positive");
  const auto labels = en::builtin_labels();
  for (const auto& d : cfg.dropped)
    if (std::find(labels.begin(), labels.end(), d) == labels.end()) throw UsageError("unknown inequality label: " + d);
  const auto cert = en::builtin_certificate(weight, cfg.dropped);
  const auto result = en::verify_dof_certificate(cert);
  emit(cfg, en::to_json(cert, result).dump(2) + "\n");
  return result.complete && result.dof_bound ? kExitOk : kExitNegative;
}

int cmd_bound(const RunConfig& cfg) {
  dofbench::Rational per_user;
  try {
    per_user = dofbench::entropy::clustered_outer_bound(cfg.users, cfg.cluster);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  dofbench::Rational total = per_user * cfg.users;
  std::ostringstream summary;
  summary << per_user.get_d() << " per user";
  const nlohmann::json doc{{"K", cfg.users},
                           {"M", cfg.cluster},
                           {"per_user", dofbench::to_string(per_user)},
                           {"per_user_decimal", per_user.get_d()},
                           {"total", dofbench::to_string(total)},
                           {"summary", summary.str()}};
  emit(cfg, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_sample_channel(const RunConfig& cfg) {
  dofbench::NetworkTopology topology = [&] {
    try {
      return dofbench::build_topology(cfg.users, dofbench::parse_connectivity(cfg.connectivity), cfg.cluster_size);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (cfg.extension < 1) throw UsageError("--T must be positive");
  const auto channel = dofbench::sample_generic_channel(topology, cfg.extension, cfg.seed);
  emit(cfg, dofbench::channel_to_json(channel).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact DoF workbench for clustered-decoding interference networks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for sampled channels")->capture_default_str();
  app.add_flag("--json", cfg.json, "Machine-readable output");
  app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

  auto* verify = app.add_subcommand("verify-example", "Exact rank check of the 12/5 example (or --channel)");
  verify->add_option("--channel", cfg.channel, "Channel JSON to verify with the example beamformers");
  verify->add_option("--cluster-size", cfg.cluster_size)->capture_default_str();

  auto* search = app.add_subcommand("search", "Enumerate power-of-G channels reaching 12/5");
  search->add_option("--max-exponent", cfg.max_exponent)->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Finite-SNR sum-rate sweep (CSV + JSON summary)");
  simulate->add_option("--snr-db", cfg.snr_db, "SNR grid in dB")->delimiter(',')->capture_default_str();
  simulate->add_option("--channel", cfg.channel, "Channel JSON (default: the 12/5 example)");
  simulate->add_option("--cluster-size", cfg.cluster_size)->capture_default_str();
  simulate->add_option("--fit-min-db", cfg.fit_min_db, "Lowest SNR in the slope fit")->capture_default_str();

  auto* prove = app.add_subcommand("prove", "Shannon-type inequality prover");
  prove->add_option("file", cfg.inequality_file, "Inequality file")->required();
  prove->add_option("--mode", cfg.mode, "discrete | mi-only")->capture_default_str();

  auto* certificate = app.add_subcommand("certificate", "Check the converse arithmetic");
  certificate->add_option("--drop", cfg.dropped, "Remove an inequality by label");
  certificate->add_option("--weight", cfg.weight, "Weight of every sum-rate bound")->capture_default_str();

  auto* bound = app.add_subcommand("bound", "Clustered outer bound 1/2 + (M-1)/K per user");
  bound->add_option("--K", cfg.users)->required();
  bound->add_option("--M", cfg.cluster)->required();

  auto* sample = app.add_subcommand("sample-channel", "Write a seeded generic channel as JSON");
  sample->add_option("--K", cfg.users)->capture_default_str();
  sample->add_option("--T", cfg.extension)->capture_default_str();
  sample->add_option("--connectivity", cfg.connectivity, "local | full")->capture_default_str();
  sample->add_option("--cluster-size", cfg.cluster_size)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    validate_paths(cfg);
    if (verify->parsed()) return cmd_verify_example(cfg);
    if (search->parsed()) return cmd_search(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (prove->parsed()) return cmd_prove(cfg);
    if (certificate->parsed()) return cmd_certificate(cfg);
    if (bound->parsed()) return cmd_bound(cfg);
    if (sample->parsed()) return cmd_sample_channel(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
