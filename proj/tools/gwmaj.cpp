// gwmaj: exact decisions for matrix, gw- and gs-majorization, with witnesses
// and Farkas certificates, plus classification and synthesis of strong
// linear preservers.
//
// Exit codes: 0 = relation holds / operator accepted / all hard properties
// pass, 3 = does not hold / rejected / a hard property failed, 2 = usage or
// input error. Nothing else is returned.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gwmaj/io.hpp"
#include "gwmaj/selftest.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitInput = 2;
constexpr int kExitRejected = 3;

constexpr const char* kVectorization = "column-stacking";

gwmaj::Relation parse_relation(const std::string& name) {
  const auto relation = gwmaj::relation_from_name(name);
  if (!relation) throw gwmaj::ParseError("unknown relation \"" + name + "\"");
  return *relation;
}

gwmaj::OrderedJson vector_to_json(const gwmaj::Vec& values) {
  gwmaj::OrderedJson result = gwmaj::OrderedJson::array();
  for (const gwmaj::Rational& value : values) result.push_back(gwmaj::to_string(value));
  return result;
}

gwmaj::Vec vector_from_json(const gwmaj::Json& doc) {
  if (!doc.is_array()) throw gwmaj::ParseError("certificate vector must be an array");
  gwmaj::Vec result;
  for (const auto& entry : doc) {
    if (!entry.is_string()) {
      throw gwmaj::ParseError("certificate entries must be rational strings");
    }
    result.push_back(gwmaj::parse_rational(entry.get<std::string>()));
  }
  return result;
}

int run_check(const std::string& relation_name, const std::string& file_a,
              const std::string& file_b, const std::string& witness_out,
              const std::string& certificate_out) {
  const gwmaj::Relation relation = parse_relation(relation_name);
  const gwmaj::Matrix a = gwmaj::read_matrix_file(file_a);
  const gwmaj::Matrix b = gwmaj::read_matrix_file(file_b);
  if (!a.same_shape(b)) {
    throw gwmaj::ParseError(file_a + " and " + file_b + " have different shapes");
  }
  const auto start = std::chrono::steady_clock::now();
  const gwmaj::MajorizationVerdict verdict = gwmaj::majorizes(relation, a, b);
  const auto stop = std::chrono::steady_clock::now();

  gwmaj::OrderedJson report;
  report["command"] = "check";
  report["relation"] = relation_name;
  report["a"] = file_a;
  report["b"] = file_b;
  report["holds"] = verdict.holds;
  report["witness"] = verdict.witness ? gwmaj::matrix_to_json(*verdict.witness)
                                      : gwmaj::OrderedJson(nullptr);
  report["failed_row"] = verdict.failed_row ? gwmaj::OrderedJson(*verdict.failed_row)
                                            : gwmaj::OrderedJson(nullptr);
  report["certificate"] = verdict.certificate ? vector_to_json(verdict.certificate->y)
                                              : gwmaj::OrderedJson(nullptr);
  report["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(stop - start).count();
  std::cout << gwmaj::dump_json(report);

  if (verdict.holds && !witness_out.empty()) {
    gwmaj::write_matrix_file(witness_out, *verdict.witness);
  }
  if (verdict.certificate && !certificate_out.empty()) {
    gwmaj::OrderedJson certificate;
    certificate["relation"] = relation_name;
    certificate["row"] = *verdict.failed_row;
    certificate["y"] = vector_to_json(verdict.certificate->y);
    gwmaj::write_text_file(certificate_out, gwmaj::dump_json(certificate));
  }
  return verdict.holds ? kExitHolds : kExitRejected;
}

int run_verify_witness(const std::string& relation_name, const std::string& file_a,
                       const std::string& file_b, const std::string& witness_path,
                       const std::string& certificate_path) {
  if (witness_path.empty() == certificate_path.empty()) {
    throw gwmaj::ParseError("provide exactly one of --witness and --certificate");
  }
  const gwmaj::Relation relation = parse_relation(relation_name);
  const gwmaj::Matrix a = gwmaj::read_matrix_file(file_a);
  const gwmaj::Matrix b = gwmaj::read_matrix_file(file_b);

  gwmaj::OrderedJson report;
  report["command"] = "verify-witness";
  report["relation"] = relation_name;
  bool valid = false;
  if (!witness_path.empty()) {
    const gwmaj::Matrix witness = gwmaj::read_matrix_file(witness_path);
    valid = gwmaj::verify_majorization_witness(relation, a, b, witness);
    report["mode"] = "witness";
  } else {
    if (relation != gwmaj::Relation::Matrix) {
      throw gwmaj::ParseError("certificates exist only for the matrix relation");
    }
    const gwmaj::Json doc = gwmaj::parse_json_text(gwmaj::read_text_file(certificate_path),
                                                   certificate_path);
    if (!doc.is_object() || !doc.contains("row") || !doc.contains("y") ||
        !doc["row"].is_number_unsigned()) {
      throw gwmaj::ParseError(certificate_path + ": expected { \"row\": i, \"y\": [...] }");
    }
    const std::size_t row = doc["row"].get<std::size_t>();
    const gwmaj::FarkasCertificate certificate{vector_from_json(doc["y"])};
    valid = row < a.rows() && gwmaj::verify_row_certificate(a, b, row, certificate);
    report["mode"] = "certificate";
  }
  report["valid"] = valid;
  std::cout << gwmaj::dump_json(report);
  return valid ? kExitHolds : kExitRejected;
}

int run_classify(const std::string& relation_name, const std::string& file_t,
                 std::size_t n, std::size_t m) {
  const gwmaj::Relation relation = parse_relation(relation_name);
  if (relation == gwmaj::Relation::Gs) {
    throw gwmaj::ParseError("classify supports the gw and matrix relations");
  }
  const gwmaj::Matrix raw = gwmaj::read_matrix_file(file_t);
  if (raw.rows() != n * m || raw.cols() != n * m) {
    throw gwmaj::ParseError(file_t + ": expected a " + std::to_string(n * m) + "x" +
                            std::to_string(n * m) + " operator matrix");
  }
  if (relation == gwmaj::Relation::Matrix && n != m) {
    throw gwmaj::ParseError("matrix-majorization preservers require n = m");
  }
  const gwmaj::MatrixOperator op(n, m, raw);
  const gwmaj::PreserverClassification classification =
      relation == gwmaj::Relation::Gw ? gwmaj::is_strong_gw_preserver(op)
                                      : gwmaj::is_strong_matrix_majorization_preserver(op);

  gwmaj::OrderedJson report;
  report["command"] = "classify";
  report["relation"] = relation_name;
  report["n"] = n;
  report["m"] = m;
  report["vectorization"] = kVectorization;
  int exit_code = kExitRejected;
  if (const auto* gw = std::get_if<gwmaj::StrongGwPreserver>(&classification)) {
    report["strong_preserver"] = true;
    report["form"] = "AXB";
    report["A"] = gwmaj::matrix_to_json(gw->a);
    report["B"] = gwmaj::matrix_to_json(gw->b);
    exit_code = kExitHolds;
  } else if (const auto* pxl = std::get_if<gwmaj::StrongMatrixPreserver>(&classification)) {
    report["strong_preserver"] = true;
    report["form"] = "PXL";
    report["P"] = gwmaj::matrix_to_json(pxl->p);
    report["L"] = gwmaj::matrix_to_json(pxl->l);
    exit_code = kExitHolds;
  } else if (const auto* rejected = std::get_if<gwmaj::NotPreserver>(&classification)) {
    report["strong_preserver"] = false;
    report["reason"] = gwmaj::reject_reason_name(rejected->reason);
    report["detail"] = rejected->detail;
  }
  std::cout << gwmaj::dump_json(report);
  return exit_code;
}

int run_synth(std::size_t n, std::size_t m, std::uint64_t seed, const std::string& out_path) {
  gwmaj::Rng rng(seed);
  const gwmaj::SynthesizedPreserver synth = gwmaj::synth_strong_gw_preserver(n, m, rng);

  gwmaj::OrderedJson document;
  document["n"] = n;
  document["m"] = m;
  document["seed"] = seed;
  document["vectorization"] = kVectorization;
  document["operator"] = gwmaj::matrix_to_json(synth.op.matrix());
  document["A"] = gwmaj::matrix_to_json(synth.a);
  document["B"] = gwmaj::matrix_to_json(synth.b);
  gwmaj::write_text_file(out_path, gwmaj::dump_json(document));

  gwmaj::OrderedJson report;
  report["command"] = "synth";
  report["n"] = n;
  report["m"] = m;
  report["seed"] = seed;
  report["out"] = out_path;
  std::cout << gwmaj::dump_json(report);
  return kExitHolds;
}

int run_decompose(const std::string& file_r) {
  const gwmaj::Matrix raw = gwmaj::read_matrix_file(file_r);
  if (raw.rows() != raw.cols() || !gwmaj::is_g_row_stochastic(raw)) {
    throw gwmaj::ParseError(file_r + ": input must be a g-row stochastic matrix");
  }
  const gwmaj::AffineCombination combination =
      gwmaj::affine_decompose(gwmaj::GRowStochastic(raw));

  gwmaj::OrderedJson report;
  report["command"] = "decompose-grs";
  report["input"] = file_r;
  gwmaj::OrderedJson coefficients = gwmaj::OrderedJson::array();
  gwmaj::OrderedJson parts = gwmaj::OrderedJson::array();
  for (const auto& [coefficient, part] : combination.terms) {
    coefficients.push_back(gwmaj::to_string(coefficient));
    parts.push_back(gwmaj::matrix_to_json(part.matrix()));
  }
  report["coefficients"] = std::move(coefficients);
  report["parts"] = std::move(parts);
  std::cout << gwmaj::dump_json(report);
  return kExitHolds;
}

int run_verify(const std::string& suite, const gwmaj::SelftestOptions& options) {
  std::vector<gwmaj::PropertyResult> results;
  const auto append = [&results](std::vector<gwmaj::PropertyResult> more) {
    for (auto& property : more) results.push_back(std::move(property));
  };
  if (suite == "lp" || suite == "all") append(gwmaj::run_lp_suite(options));
  if (suite == "relations" || suite == "all") append(gwmaj::run_relations_suite(options));
  if (suite == "theorems" || suite == "all") append(gwmaj::run_theorems_suite(options));

  std::cout << "suite: " << suite << "\n"
            << "seed: " << options.seed << "\n"
            << "trials: " << options.trials << "\n"
            << "max-n: " << options.max_n << ", max-m: " << options.max_m << "\n";
  std::size_t hard_total = 0;
  std::size_t hard_passed = 0;
  for (const gwmaj::PropertyResult& property : results) {
    if (property.hard) {
      ++hard_total;
      if (property.passed) ++hard_passed;
    }
    std::cout << (property.passed ? "PASS" : "FAIL") << (property.hard ? " " : " [soft] ")
              << property.name << " (" << property.detail << ")\n";
  }
  const bool ok = hard_passed == hard_total;
  std::cout << "result: " << (ok ? "PASS" : "FAIL") << " (" << hard_passed << "/" << hard_total
            << " hard properties)\n";
  return ok ? kExitHolds : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact matrix-majorization toolkit"};
  app.require_subcommand(1);

  std::string relation;
  std::string file_a, file_b, file_t;
  std::string witness_path, certificate_path, out_path;
  std::size_t n = 2, m = 2;
  std::uint64_t seed = 0;
  std::string suite;
  gwmaj::SelftestOptions selftest;

  CLI::App* check = app.add_subcommand("check", "decide A >= B for a majorization relation");
  check->add_option("--relation", relation, "gw | matrix | gs")
      ->required()
      ->check(CLI::IsMember({"gw", "matrix", "gs"}));
  check->add_option("fileA", file_a, "left-hand matrix file")->required();
  check->add_option("fileB", file_b, "right-hand matrix file")->required();
  check->add_option("--witness", witness_path, "write the witness matrix here when the relation holds");
  check->add_option("--certificate", certificate_path,
                    "write the Farkas certificate here when the matrix relation fails");

  CLI::App* verify_witness =
      app.add_subcommand("verify-witness", "re-check an emitted witness or certificate");
  verify_witness->add_option("--relation", relation, "gw | matrix | gs")
      ->required()
      ->check(CLI::IsMember({"gw", "matrix", "gs"}));
  verify_witness->add_option("fileA", file_a)->required();
  verify_witness->add_option("fileB", file_b)->required();
  verify_witness->add_option("--witness", witness_path, "witness matrix file");
  verify_witness->add_option("--certificate", certificate_path, "certificate file");

  CLI::App* classify =
      app.add_subcommand("classify", "classify a linear operator as a strong preserver");
  classify->add_option("--relation", relation, "gw | matrix")
      ->required()
      ->check(CLI::IsMember({"gw", "matrix"}));
  classify->add_option("fileT", file_t, "nm x nm operator matrix file")->required();
  classify->add_option("--n", n, "row count of operands")->required()->check(CLI::Range(1, 64));
  classify->add_option("--m", m, "column count of operands")->required()->check(CLI::Range(1, 64));

  CLI::App* synth = app.add_subcommand("synth", "synthesize a strong gw-preserver with factors");
  synth->add_option("--n", n)->required()->check(CLI::Range(1, 16));
  synth->add_option("--m", m)->required()->check(CLI::Range(1, 16));
  synth->add_option("--seed", seed)->required();
  synth->add_option("--out", out_path, "output file for operator and factors")->required();

  CLI::App* decompose =
      app.add_subcommand("decompose-grs", "affine decomposition into row stochastic matrices");
  decompose->add_option("fileR", file_a, "g-row stochastic matrix file")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the property-suite self checks");
  verify->add_option("--suite", suite, "theorems | relations | lp | all")
      ->required()
      ->check(CLI::IsMember({"theorems", "relations", "lp", "all"}));
  verify->add_option("--trials", selftest.trials)->check(CLI::Range(1, 10000));
  verify->add_option("--max-n", selftest.max_n)->check(CLI::Range(1, 6));
  verify->add_option("--max-m", selftest.max_m)->check(CLI::Range(1, 6));
  verify->add_option("--seed", selftest.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitInput;
  }

  try {
    if (app.got_subcommand(check)) {
      return run_check(relation, file_a, file_b, witness_path, certificate_path);
    }
    if (app.got_subcommand(verify_witness)) {
      return run_verify_witness(relation, file_a, file_b, witness_path, certificate_path);
    }
    if (app.got_subcommand(classify)) {
      return run_classify(relation, file_t, n, m);
    }
    if (app.got_subcommand(synth)) {
      return run_synth(n, m, seed, out_path);
    }
    if (app.got_subcommand(decompose)) {
      return run_decompose(file_a);
    }
    if (app.got_subcommand(verify)) {
      return run_verify(suite, selftest);
    }
  } catch (const gwmaj::ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInput;
  } catch (const gwmaj::GenerationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
