#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "invlim/cli.hpp"
#include "invlim/config.hpp"

using namespace invlim;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run_args(std::vector<std::string> args) {
  std::ostringstream out, err;
  int s = cli::main(args, out, err);
  return {s, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("invlim_cli_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

std::vector<nlohmann::json> records(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST(ConfigFile, ParsesCommentsAndRepeatedKeys) {
  auto f = ConfigFile::parse("# header\nsystem = sft   # trailing\n\nadjacency = 1 1\nadjacency = 1 0\n beta=1/8\n");
  EXPECT_EQ(f.get("system"), "sft");
  EXPECT_EQ(f.get("beta"), "1/8");
  ASSERT_EQ(f.all("adjacency").size(), 2u);
  EXPECT_EQ(f.all("adjacency")[1].line, 5);
  EXPECT_FALSE(f.get("gamma"));
  try {
    ConfigFile::parse("system = sft\nbroken line\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ConfigFile, FieldDiagnostics) {
  auto field_of = [](const std::string& text) {
    try {
      RunConfig::from(ConfigFile::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(""), "command");
  EXPECT_EQ(field_of("command = verify\n"), "system");
  EXPECT_EQ(field_of("command = verify\nsystem = torus\n"), "system");
  EXPECT_EQ(field_of("command = verify\nsystem = golden\nbeta = one\n"), "beta");
  EXPECT_EQ(field_of("command = verify\nsystem = golden\ngamma = 1\n"), "gamma");
  EXPECT_EQ(field_of("command = verify\nsystem = golden\nK = 0\n"), "K");
  EXPECT_EQ(field_of("command = verify\nsystem = golden\ncolour = red\n"), "colour");
  EXPECT_EQ(field_of("command = verify\nsystem = sft\n"), "adjacency");
  EXPECT_EQ(field_of("command = verify\nsystem = sft\nadjacency = 1 1\nadjacency = 0 0\n"), "adjacency");
  EXPECT_EQ(field_of("command = verify\nsystem = sft\nadjacency = 1 2\nadjacency = 0 1\n"), "adjacency");
  EXPECT_EQ(field_of("command = bracket\nsystem = golden\nx = (0)\n"), "y");
  EXPECT_EQ(field_of("command = search\nsystem = golden\nK-min = 3\nK-max = 2\n"), "K-max");
  EXPECT_EQ(field_of("command = replay\n"), "witness-file");
  EXPECT_EQ(field_of("command = verify\nsystem = golden\n"), "<none>");
}

TEST(ConfigFile, SftAndGasketTables) {
  auto sc = read_system_config(ConfigFile::parse("system = sft\nalphabet = a,b\nadjacency = 1,1\nadjacency = 1,0\n"));
  EXPECT_EQ(sc.shift_spec().adjacency(), EdgeShiftSpec::golden_mean().adjacency());
  EXPECT_EQ(sc.shift_spec().alphabet().tokens(), (std::vector<char>{'a', 'b'}));

  std::string rows;
  for (const auto& l : GasketLabelTable::standard().labels)
    rows += std::string("gasket-labels = ") + l[0] + "," + l[1] + "," + l[2] + "\n";
  auto g = read_system_config(ConfigFile::parse("system = gasket\n" + rows));
  EXPECT_EQ(g.gasket_table(), GasketLabelTable::standard());
  // Swapping two corner labels of Y1 breaks the midpoint rule somewhere.
  std::string bad = rows;
  bad.replace(bad.find("A,A,B"), 5, "A,B,A");
  EXPECT_THROW(read_system_config(ConfigFile::parse("system = gasket\n" + bad)), ConfigError);
  EXPECT_THROW(read_system_config(ConfigFile::parse("system = gasket\ngasket-labels = A,B,C\n")), ConfigError);
}

TEST(RunConfig, SerializeRoundTrip) {
  for (const char* text :
       {"command = verify\nsystem = solenoid\naxiom = 1\nbeta = 1/27\n",
        "command = search\nsystem = golden\nK-max = 2\ngammas = 1/2,3/4\n",
        "command = bracket\nsystem = gasket\nx = A\ny = A\ndepth = 3\n",
        "command = smale-verify\nsystem = sft\nadjacency = 1 1\nadjacency = 1 0\nseed = 9\n",
        "command = conjugacy\nsamples = 10\n", "command = falsify-example2\nK = 2\ngamma = 1/4\n",
        "command = replay\nwitness-file = w.jsonl\n"}) {
    auto rc = RunConfig::from(ConfigFile::parse(text));
    auto again = RunConfig::from(ConfigFile::parse(rc.serialize()));
    EXPECT_EQ(again, rc) << text;
    EXPECT_EQ(again.serialize(), rc.serialize());
  }
  auto f = RunConfig::from(ConfigFile::parse("command = falsify-example2\nK = 2\n"));
  EXPECT_EQ(f.N, 4);
}

TEST(Cli, ExitStatusExamples) {
  auto f = run_args({"falsify-example2", "--K", "1", "--N", "2", "--gamma", "1/2"});
  EXPECT_EQ(f.status, cli::kFalsified);
  auto recs = records(f.out);
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[1]["pair"], "stated");
  EXPECT_EQ(recs[1]["d_gKx_y"], "1/4");
  EXPECT_EQ(recs[1]["falsified"], false);
  EXPECT_EQ(recs[2]["falsified"], true);
  EXPECT_EQ(recs[3]["record"], "witness");

  EXPECT_EQ(run_args({"verify", "--system", "fullshift2", "--axiom", "both", "--K", "1", "--beta", "1/4", "--gamma",
                      "1/2"})
                .status,
            cli::kPass);
  auto empty = run_args({"--config", temp_file("empty.cfg", "")});
  EXPECT_EQ(empty.status, cli::kConfigError);
  EXPECT_NE(empty.err.find("config"), std::string::npos);
  auto bad = run_args({"verify", "--system", "golden", "--beta", "1/0"});
  EXPECT_EQ(bad.status, cli::kConfigError);
  EXPECT_NE(bad.err.find("'beta'"), std::string::npos);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_EQ(run_args({"verify", "--bogus", "1"}).status, cli::kConfigError);
  EXPECT_EQ(run_args({"--help"}).status, cli::kPass);
}

TEST(Cli, ConfigFileAndFlagsMerge) {
  auto cfg = temp_file("merge.cfg", "command = verify\nsystem = solenoid\nK = 1\nbeta = 1/10\nresolution = 1/81\n");
  auto failing = run_args({"--config", cfg});
  EXPECT_EQ(failing.status, cli::kFalsified);
  // A flag overrides the file: beta 1/27 passes axiom 1.
  auto ok = run_args({"--config", cfg, "--beta", "1/27", "--axiom", "1"});
  EXPECT_EQ(ok.status, cli::kPass) << ok.out;
}

TEST(Cli, ReportsAreDeterministicAndReproducibleFromTheirConfig) {
  auto a = run_args({"smale-verify", "--system", "fullshift2", "--samples", "30", "--seed", "4"});
  auto b = run_args({"smale-verify", "--system", "fullshift2", "--samples", "30", "--seed", "4"});
  ASSERT_EQ(a.status, cli::kPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto cfg_text = records(a.out).front()["config"].get<std::string>();
  auto c = run_args({"--config", temp_file("repro.cfg", cfg_text)});
  EXPECT_EQ(c.out, a.out);
  auto other = run_args({"smale-verify", "--system", "fullshift2", "--samples", "30", "--seed", "5"});
  EXPECT_NE(other.out, a.out);
  auto j1 = run_args({"verify", "--system", "solenoid", "--K", "1", "--beta", "1/10", "--resolution", "1/81"});
  auto j4 = run_args({"verify", "--system", "solenoid", "--K", "1", "--beta", "1/10", "--resolution", "1/81",
                      "--jobs", "4"});
  auto strip_config = [](const std::string& s) { return s.substr(s.find('\n')); };
  EXPECT_EQ(strip_config(j1.out), strip_config(j4.out));
}

TEST(Cli, WitnessesReplay) {
  auto v = run_args({"verify", "--system", "solenoid", "--K", "1", "--beta", "1/10", "--resolution", "1/81"});
  ASSERT_EQ(v.status, cli::kFalsified);
  auto path = temp_file("witness.jsonl", v.out);
  auto r = run_args({"replay", "--witness-file", path});
  EXPECT_EQ(r.status, cli::kPass) << r.out;
  auto recs = records(r.out);
  EXPECT_EQ(recs.back()["witnesses"], 16);
  EXPECT_EQ(recs.back()["failed"], 0);

  // A tampered value no longer replays.
  std::string tampered = v.out;
  auto pos = tampered.find("\"kind\":\"axiom1\"");
  ASSERT_NE(pos, std::string::npos);
  pos = tampered.find("\"num\":\"", pos);
  tampered.replace(pos + 7, 1, "9");
  auto t = run_args({"replay", "--witness-file", temp_file("tampered.jsonl", tampered)});
  EXPECT_EQ(t.status, cli::kFalsified);
  EXPECT_EQ(records(t.out).back()["failed"], 1);
}

TEST(Cli, BracketCommand) {
  auto ok = run_args({"bracket", "--system", "fullshift2", "--x", "(01)", "--y", "(01)", "--depth", "6"});
  EXPECT_EQ(ok.status, cli::kPass) << ok.err;
  auto far = run_args({"bracket", "--system", "fullshift2", "--x", "(0)", "--y", "(1)"});
  EXPECT_EQ(far.status, cli::kConfigError);
  std::string y;
  for (int n = 0; n < 9; ++n) y += "(0) ";
  y += "2(0)";
  auto stuck = run_args({"bracket", "--system", "example2", "--x", "00000001(0)", "--y", y, "--depth", "12"});
  EXPECT_EQ(stuck.status, cli::kFalsified);
  EXPECT_EQ(records(stuck.out).back()["error"], "no-admissible-preimage");
}

TEST(Cli, ConjugacyWithMatrixFile) {
  auto m = temp_file("golden.sft", "# golden mean\nadjacency = 1 1\nadjacency = 1 0\n");
  auto r = run_args({"conjugacy", "--sft", m, "--samples", "40", "--depth", "8"});
  EXPECT_EQ(r.status, cli::kPass) << r.err;
  auto recs = records(r.out);
  EXPECT_EQ(recs[1]["pass"], true);
  EXPECT_EQ(recs[2]["constants"]["K"], 1);
  auto reducible = temp_file("red.sft", "adjacency = 1 0\nadjacency = 0 1\n");
  EXPECT_EQ(run_args({"conjugacy", "--sft", reducible}).status, cli::kConfigError);
}

TEST(Cli, CsvExport) {
  auto r = run_args({"verify", "--system", "fullshift2", "--resolution", "1/16", "--csv"});
  EXPECT_EQ(r.status, cli::kPass);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "axiom,ratio,count");
  EXPECT_NE(r.out.find("\n1,1/2,"), std::string::npos);
  EXPECT_NE(r.out.find("\n2,"), std::string::npos);
  EXPECT_EQ(run_args({"conjugacy", "--csv"}).status, cli::kConfigError);
}

TEST(Cli, BinaryExitStatus) {
  const std::string bin = INVLIM_CLI_PATH;
  auto status = [&](const std::string& args) {
    int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("falsify-example2 --K 1 --N 2 --gamma 1/2"), 1);
  EXPECT_EQ(status("verify --system fullshift2 --axiom both --K 1 --beta 1/4 --gamma 1/2"), 0);
  EXPECT_EQ(status("--config " + temp_file("empty2.cfg", "")), 2);
}

TEST(Cli, ShippedConfigsLoad) {
  const std::string dir = std::string(INVLIM_SOURCE_DIR) + "/tools/configs/";
  auto gasket = RunConfig::from(ConfigFile::load(dir + "gasket_default.cfg"));
  EXPECT_EQ(gasket.system.gasket_table(), GasketLabelTable::standard());
  auto search = RunConfig::from(ConfigFile::load(dir + "solenoid_search.cfg"));
  EXPECT_EQ(search.betas.size(), 4u);
  auto sft = ConfigFile::load(dir + "golden.sft");
  sft.set("system", "sft");
  EXPECT_EQ(read_system_config(sft).shift_spec().adjacency(), EdgeShiftSpec::golden_mean().adjacency());
  EXPECT_EQ(run_args({"--config", dir + "gasket_default.cfg"}).status, cli::kPass);
}
