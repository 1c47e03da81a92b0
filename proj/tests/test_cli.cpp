#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "gwmaj/io.hpp"
#include "gwmaj/preservers.hpp"

using namespace gwmaj;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "gwmaj-cli-tests";
  fs::create_directories(dir);
  return dir;
}

CommandResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = scratch_dir();
  const fs::path out = dir / ("stdout-" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("stderr-" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string command = std::string(GWMAJ_CLI_PATH) + " " + args + " > " + out.string() +
                              " 2> " + err.string();
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_text_file(out.string());
  result.err = read_text_file(err.string());
  return result;
}

std::string write_matrix(const std::string& name, const Matrix& m) {
  const fs::path path = scratch_dir() / name;
  write_matrix_file(path.string(), m);
  return path.string();
}

const Matrix kExampleA{{1, 0}, {-1, 2}};

}  // namespace

TEST_CASE("cli check reports reflexive gw with an identity witness") {
  const std::string a = write_matrix("a.json", kExampleA);
  const std::string witness_path = (scratch_dir() / "witness-id.json").string();
  const CommandResult result = run_cli("check --relation gw " + a + " " + a + " --witness " + witness_path);
  CHECK(result.exit_code == 0);
  CHECK(read_matrix_file(witness_path) == Matrix::identity(2));
  const Json report = Json::parse(result.out);
  CHECK(report["holds"] == true);
  CHECK(report["relation"] == "gw");
}

TEST_CASE("cli check finds the swap witness and it re-checks") {
  const std::string x1 = write_matrix("x1.json", Matrix{{1, 0}, {0, 0}});
  const std::string x2 = write_matrix("x2.json", Matrix{{0, 0}, {1, 0}});
  const std::string witness_path = (scratch_dir() / "witness-swap.json").string();
  const CommandResult result =
      run_cli("check --relation matrix " + x1 + " " + x2 + " --witness " + witness_path);
  CHECK(result.exit_code == 0);
  CHECK(read_matrix_file(witness_path) == Matrix{{0, 1}, {1, 0}});

  const CommandResult recheck = run_cli("verify-witness --relation matrix " + x1 + " " + x2 +
                                        " --witness " + witness_path);
  CHECK(recheck.exit_code == 0);

  // a witness for the wrong pair is rejected
  const CommandResult cross = run_cli("verify-witness --relation matrix " + x1 + " " + x1 +
                                      " --witness " + witness_path);
  CHECK(cross.exit_code == 3);
}

TEST_CASE("cli check emits a verifiable certificate on failure") {
  const MatrixOperator t = MatrixOperator::from_factors(kExampleA, Matrix::identity(2));
  const std::string tx1 = write_matrix("tx1.json", t.apply(Matrix{{1, 0}, {0, 0}}));
  const std::string tx2 = write_matrix("tx2.json", t.apply(Matrix{{0, 0}, {1, 0}}));
  const std::string certificate_path = (scratch_dir() / "certificate.json").string();
  const CommandResult result = run_cli("check --relation matrix " + tx1 + " " + tx2 +
                                       " --certificate " + certificate_path);
  CHECK(result.exit_code == 3);
  const Json report = Json::parse(result.out);
  CHECK(report["holds"] == false);
  CHECK(report["failed_row"] == 1);
  REQUIRE(report["certificate"].is_array());

  const CommandResult recheck = run_cli("verify-witness --relation matrix " + tx1 + " " + tx2 +
                                        " --certificate " + certificate_path);
  CHECK(recheck.exit_code == 0);
}

TEST_CASE("cli rejects malformed input with exit 2") {
  const fs::path bad = scratch_dir() / "bad.json";
  write_text_file(bad.string(), R"({"rows":1,"cols":2,"data":[["1","2.5"]]})");
  const std::string good = write_matrix("good-1x2.json", Matrix(1, 2));
  const CommandResult result = run_cli("check --relation gw " + bad.string() + " " + good);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("2.5") != std::string::npos);
  CHECK(result.err.find("entry (0,1)") != std::string::npos);

  const CommandResult missing = run_cli("check --relation gw /nonexistent.json " + good);
  CHECK(missing.exit_code == 2);

  const std::string wide = write_matrix("wide.json", Matrix(2, 3));
  const std::string tall = write_matrix("tall.json", Matrix(3, 2));
  const CommandResult mismatch = run_cli("check --relation gw " + wide + " " + tall);
  CHECK(mismatch.exit_code == 2);

  const CommandResult bad_relation = run_cli("check --relation weak " + good + " " + good);
  CHECK(bad_relation.exit_code == 2);
}

TEST_CASE("cli check handles the gs relation") {
  const std::string id = write_matrix("id.json", Matrix::identity(2));
  const std::string balanced = write_matrix("balanced.json", Matrix{{2, -1}, {-1, 2}});
  const std::string unbalanced = write_matrix("unbalanced.json", Matrix{{2, -1}, {0, 1}});
  const std::string witness_path = (scratch_dir() / "witness-gs.json").string();
  const CommandResult holds =
      run_cli("check --relation gs " + id + " " + balanced + " --witness " + witness_path);
  CHECK(holds.exit_code == 0);
  const CommandResult recheck = run_cli("verify-witness --relation gs " + id + " " + balanced +
                                        " --witness " + witness_path);
  CHECK(recheck.exit_code == 0);
  CHECK(run_cli("check --relation gs " + id + " " + unbalanced).exit_code == 3);
}

TEST_CASE("cli classify on the example operator") {
  const MatrixOperator t = MatrixOperator::from_factors(kExampleA, Matrix::identity(2));
  const std::string file_t = write_matrix("op-example.json", t.matrix());

  const CommandResult as_gw = run_cli("classify --relation gw --n 2 --m 2 " + file_t);
  CHECK(as_gw.exit_code == 0);
  const Json gw_report = Json::parse(as_gw.out);
  CHECK(gw_report["form"] == "AXB");
  CHECK(matrix_from_json(gw_report["A"]) == kExampleA);
  CHECK(matrix_from_json(gw_report["B"]) == Matrix::identity(2));

  const CommandResult as_matrix = run_cli("classify --relation matrix --n 2 --m 2 " + file_t);
  CHECK(as_matrix.exit_code == 3);
  CHECK(Json::parse(as_matrix.out)["reason"] == "not-permutation");
}

TEST_CASE("cli classify rejects the zero operator as non-invertible") {
  const std::string file_t = write_matrix("op-zero.json", Matrix::zero(4, 4));
  const CommandResult result = run_cli("classify --relation gw --n 2 --m 2 " + file_t);
  CHECK(result.exit_code == 3);
  const Json report = Json::parse(result.out);
  CHECK(report["reason"] == "operator-singular");
  CHECK(report["detail"].get<std::string>().find("not invertible") != std::string::npos);
}

TEST_CASE("cli classify validates its parameters") {
  const std::string file_t = write_matrix("op-rect.json", Matrix::identity(6));
  CHECK(run_cli("classify --relation matrix --n 2 --m 3 " + file_t).exit_code == 2);
  CHECK(run_cli("classify --relation gw --n 2 --m 2 " + file_t).exit_code == 2);
  CHECK(run_cli("classify --relation gs --n 2 --m 3 " + file_t).exit_code == 2);
}

TEST_CASE("cli synth is reproducible and chains into classify") {
  const std::string out1 = (scratch_dir() / "synth1.json").string();
  const std::string out2 = (scratch_dir() / "synth2.json").string();
  const CommandResult first = run_cli("synth --n 2 --m 2 --seed 42 --out " + out1);
  const CommandResult second = run_cli("synth --n 2 --m 2 --seed 42 --out " + out2);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(read_text_file(out1) == read_text_file(out2));
  const CommandResult repeat = run_cli("synth --n 2 --m 2 --seed 42 --out " + out1);
  CHECK(repeat.out == first.out);

  const Json synth_doc = Json::parse(read_text_file(out1));
  const Matrix op = matrix_from_json(synth_doc["operator"]);
  const Matrix a = matrix_from_json(synth_doc["A"]);
  const Matrix b = matrix_from_json(synth_doc["B"]);
  const std::string file_t = write_matrix("op-synth.json", op);
  const CommandResult classified = run_cli("classify --relation gw --n 2 --m 2 " + file_t);
  CHECK(classified.exit_code == 0);
  const Json report = Json::parse(classified.out);
  CHECK(matrix_from_json(report["A"]) == a);
  CHECK(matrix_from_json(report["B"]) == b);
}

TEST_CASE("cli decompose-grs prints the two-term decomposition") {
  const std::string file_r = write_matrix("grs.json", kExampleA);
  const CommandResult result = run_cli("decompose-grs " + file_r);
  CHECK(result.exit_code == 0);
  const Json report = Json::parse(result.out);
  CHECK(report["coefficients"] == Json::array({"3", "-2"}));
  CHECK(matrix_from_json(report["parts"][0]) ==
        Matrix{{Rational(2, 3), Rational(1, 3)}, {0, 1}});
  CHECK(matrix_from_json(report["parts"][1]) ==
        Rational(1, 2) * Matrix::ones(2, 2));

  const std::string not_grs = write_matrix("not-grs.json", Matrix{{1, 1}, {0, 1}});
  CHECK(run_cli("decompose-grs " + not_grs).exit_code == 2);
}

TEST_CASE("cli verify runs the lp suite") {
  const CommandResult result = run_cli("verify --suite lp --trials 5 --seed 3");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("PASS lp/outcome-soundness") != std::string::npos);
  CHECK(result.out.find("result: PASS") != std::string::npos);

  CHECK(run_cli("verify --suite lp --trials 0").exit_code == 2);
  CHECK(run_cli("verify --suite lp --max-n 9").exit_code == 2);
  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
}
