#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string temp_path(const std::string& tag) {
  static int counter = 0;
  return "/tmp/slice_cauchy_test_" + std::to_string(::getpid()) + "_" +
         std::to_string(counter++) + "_" + tag;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string capture = temp_path("capture.txt");
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(SLICE_CAUCHY_CLI_PATH) + " " + args + " > " + capture +
         " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  res.output = ss.str();
  std::remove(capture.c_str());
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct Csv {
  std::vector<std::string> meta;
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  for (const auto& line : lines_of(text)) {
    if (line.rfind("# ", 0) == 0) {
      csv.meta.push_back(line.substr(2));
    } else if (csv.header.empty()) {
      csv.header = line;
    } else if (!line.empty()) {
      csv.rows.push_back(fields_of(line));
    }
  }
  return csv;
}

bool has_meta(const Csv& csv, const std::string& kv) {
  for (const auto& m : csv.meta)
    if (m == kv) return true;
  return false;
}

const char kHeader[] = "point,reference,computed,abs_err,rel_err,nodes,tol,pass";

}  // namespace

TEST_CASE("reconstruction rows and exit code") {
  const RunResult r = run_cli(
      "verify-cauchy --algebra quaternion --gis full --domain disk:0,1 "
      "--function 'poly:[0,0,1]' --points '0.3+0.4i;0.5' --grid 32,8,24,24");
  CAPTURE(r.output);
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.output);
  REQUIRE(csv.header == kHeader);
  REQUIRE(has_meta(csv, "command=verify-cauchy"));
  REQUIRE(has_meta(csv, "algebra=quaternion"));
  REQUIRE(has_meta(csv, "function=poly:[0,0,1]"));
  REQUIRE(csv.rows.size() == 2);
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == 8);
    REQUIRE(std::stod(row[4]) < 1e-4);
    REQUIRE(row[7] == "1");
  }
  // element fields are printed with 17 significant digits
  REQUIRE(csv.rows[0][0].rfind("0.29999999999999999+0.4", 0) == 0);
  REQUIRE(csv.rows[1][0] == "0.5");
}

TEST_CASE("config file values with flag override") {
  const std::string cfg_path = temp_path("config.txt");
  {
    std::ofstream cfg(cfg_path);
    cfg << "# reconstruction smoke setup\n"
        << "algebra = quaternion\n"
        << "function = stem:conj\n"
        << "points = 0.3+0.4i\n"
        << "grid = 16,4,16,16\n"
        << "tol = 0.5\n";
  }
  const RunResult r = run_cli("verify-cauchy --config " + cfg_path +
                              " --function 'poly:[0,1]'");
  CAPTURE(r.output);
  REQUIRE(r.exit_code == 0);
  const Csv csv = parse_csv(r.output);
  REQUIRE(has_meta(csv, "function=poly:[0,1]"));  // the flag wins
  REQUIRE(has_meta(csv, "grid=16,4,16,16"));      // the file fills the rest
  REQUIRE(csv.rows.size() == 1);
  std::remove(cfg_path.c_str());

  const std::string bad_path = temp_path("bad_config.txt");
  {
    std::ofstream cfg(bad_path);
    cfg << "algebra = quaternion\n"
        << "gird = 16,4,16,16\n";
  }
  const RunResult bad = run_cli("verify-cauchy --config " + bad_path);
  REQUIRE(bad.exit_code == 2);
  REQUIRE(bad.output.find("unknown key") != std::string::npos);
  REQUIRE(bad.output.find(":2:") != std::string::npos);
  std::remove(bad_path.c_str());
}

TEST_CASE("failure and usage exit codes") {
  // an impossible tolerance turns rows into failures
  const RunResult fail = run_cli(
      "verify-cauchy --function 'poly:[0,0,1]' --points 0.3+0.4i "
      "--grid 16,4,16,16 --tol 1e-18");
  REQUIRE(fail.exit_code == 1);
  const Csv csv = parse_csv(fail.output);
  REQUIRE(csv.rows.size() == 1);
  REQUIRE(csv.rows[0][7] == "0");

  const RunResult noalg = run_cli(
      "verify-cauchy --algebra octonion --points 0.3+0.4i");
  REQUIRE(noalg.exit_code == 2);

  const RunResult badflag = run_cli("verify-cauchy --no-such-flag");
  REQUIRE(badflag.exit_code != 0);

  const RunResult nocmd = run_cli("");
  REQUIRE(nocmd.exit_code != 0);
}

TEST_CASE("jump and extension commands") {
  const RunResult jump = run_cli(
      "verify-jump --gis plane:i --function stem:remark "
      "--points '0.70710678+0.70710678i' --grid 256,8,24,24");
  CAPTURE(jump.output);
  REQUIRE(jump.exit_code == 0);
  const Csv jcsv = parse_csv(jump.output);
  REQUIRE(jcsv.rows.size() == 1);
  REQUIRE(std::stod(jcsv.rows[0][3]) < 5e-4);

  const RunResult ext_yes = run_cli(
      "extension-test --gis plane:i --function stem:remark "
      "--points '1.5+0.5i' --grid 256,8,24,24");
  CAPTURE(ext_yes.output);
  REQUIRE(ext_yes.exit_code == 0);
  REQUIRE(has_meta(parse_csv(ext_yes.output), "extends=true"));

  const RunResult ext_no = run_cli(
      "extension-test --gis plane:j --function stem:remark "
      "--points '1.5+0.5j' --grid 256,8,24,24");
  CAPTURE(ext_no.output);
  REQUIRE(ext_no.exit_code == 1);
  REQUIRE(has_meta(parse_csv(ext_no.output), "extends=false"));
}

TEST_CASE("identical output for different thread counts") {
  const std::string out1 = temp_path("threads1.csv");
  const std::string out4 = temp_path("threads4.csv");
  const std::string args =
      "verify-cauchy --function stem:conj --points '0.3+0.4i;0.2+0.3j' "
      "--grid 16,4,16,16 --tol 0.05 --out ";
  const RunResult r1 = run_cli(args + out1, "SLICE_CAUCHY_THREADS=1");
  const RunResult r4 = run_cli(args + out4, "SLICE_CAUCHY_THREADS=4");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r4.exit_code == 0);
  std::ifstream f1(out1), f4(out4);
  std::stringstream s1, s4;
  s1 << f1.rdbuf();
  s4 << f4.rdbuf();
  REQUIRE(s1.str() == s4.str());
  REQUIRE(!s1.str().empty());
  std::remove(out1.c_str());
  std::remove(out4.c_str());
}

TEST_CASE("timing column is opt-in") {
  const std::string args =
      "verify-cauchy --function 'poly:[0,1]' --points 0.3+0.4i "
      "--grid 16,4,16,16";
  const Csv plain = parse_csv(run_cli(args).output);
  REQUIRE(plain.header == kHeader);
  const Csv timed = parse_csv(run_cli(args + " --timing").output);
  REQUIRE(timed.header == std::string(kHeader) + ",wall_s");
  REQUIRE(timed.rows.at(0).size() == 9);
}

TEST_CASE("kernel and jacobian commands") {
  const RunResult kern = run_cli(
      "kernel-eval --gis full --points '0@i;0.5j@i'");
  CAPTURE(kern.output);
  REQUIRE(kern.exit_code == 0);
  const Csv kcsv = parse_csv(kern.output);
  REQUIRE(kcsv.rows.size() == 2);
  REQUIRE(!kcsv.rows[0][1].empty());  // in-plane pair carries a reference
  REQUIRE(kcsv.rows[1][1].empty());   // cross-plane pair does not
  REQUIRE(kcsv.rows[1][7] == "1");

  const RunResult lemma = run_cli("lemma-suite --lemma-n 2 --lemma-samples 3");
  CAPTURE(lemma.output);
  REQUIRE(lemma.exit_code == 0);
  const Csv lcsv = parse_csv(lemma.output);
  REQUIRE(lcsv.rows.size() == 2 * (3 * 2 + 1));
}

TEST_CASE("version flag") {
  const RunResult r = run_cli("--version");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("0.1.0") != std::string::npos);
}
