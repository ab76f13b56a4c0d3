#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>

#include "common.hpp"
#include "ofs/generalise.hpp"

using namespace ofs;
using ofs::testing::kSource;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(OFS_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string src(const std::string& rel) { return "'" + (kSource / rel).string() + "'"; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ofs_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

const std::string kAlphabet = "--alphabet " + src("data/english_fig3.alphabet");

}  // namespace

TEST_F(Cli, IngestEnglish) {
  auto r = run(kAlphabet + " ingest " + src("data/english_fig3.txt") + " --rejects " + tmp("rej.tsv"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 43);
  EXPECT_EQ(read_text_file(tmp("rej.tsv")), "line\treason\n");
}

TEST_F(Cli, IngestEmptyAndMissingFiles) {
  write_text_file(tmp("empty.txt"), "");
  EXPECT_EQ(run(kAlphabet + " ingest " + tmp("empty.txt")).status, 0);
  EXPECT_EQ(run(kAlphabet + " ingest " + tmp("nope.txt")).status, 2);
  EXPECT_EQ(run("ingest " + src("data/english_fig3.txt")).status, 1);
}

TEST_F(Cli, InstantiateMatchesGolden) {
  auto r = run(kAlphabet + " instantiate " + src("prototypes/syllable.ofsp") + " " + src("data/english_fig3.txt") +
               " -o " + tmp("m.ofs"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "Onset\t19\nPeak\t13\nCoda\t25\n");
  auto golden = ofs::testing::fig4();
  auto got = load_model(tmp("m.ofs"));
  EXPECT_EQ(got.levels(), golden.levels());
}

TEST_F(Cli, InstantiateUnknownClassIsDataError) {
  write_text_file(tmp("p.ofsp"), "ofs-model P levels=2\nlevel 1:\n  S => A\nlevel 0:\n  A = / (x: GLIDES*) /\n");
  EXPECT_EQ(run(kAlphabet + " instantiate " + tmp("p.ofsp") + " " + src("data/english_fig3.txt")).status, 2);
}

TEST_F(Cli, GeneraliseAndStats) {
  auto g = run("generalise " + src("data/golden/fig4.ofs") + " --tau 0.18 -o " + tmp("g.ofs"));
  ASSERT_EQ(g.status, 0);
  EXPECT_EQ(read_text_file(tmp("g.ofs")), serialize_model(ofs::testing::fig5()));
  auto s = run("--round sim:2 --format tsv stats " + src("data/golden/fig4.ofs"));
  ASSERT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("Onset\tCoda\t7\t7/37\t0.19\n"), std::string::npos);
  EXPECT_EQ(run("generalise " + src("data/golden/fig4.ofs") + " --tau 2").status, 1);
  EXPECT_EQ(run("generalise " + src("data/golden/fig4.ofs") + " --tau x").status, 1);
}

TEST_F(Cli, SweepMatchesClusterPartition) {
  auto r = run("--format tsv clustertree " + src("data/golden/fig4.ofs") + " --grid 0.05:1:0.05");
  ASSERT_EQ(r.status, 0);
  auto m = similarity_matrix(ofs::testing::fig4());
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "tau\ttau_decimal\tclusters\tpartition");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    auto tab = line.find('\t');
    auto tau = parse_rational(line.substr(0, tab));
    auto last = line.rfind('\t');
    EXPECT_EQ(line.substr(last + 1), to_string(cluster_partition(m, tau), m));
    ++rows;
  }
  EXPECT_EQ(rows, 20u);
}

TEST_F(Cli, Count) {
  auto r = run("--format tsv count " + src("data/golden/fig5.ofs") + " -k 2:3 --distinct");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "k\tderivations\tderivations_approx\tdistinct\n2\t0\t0\t0\n3\t17797\t1.77e4\t17797\n");
  EXPECT_EQ(run("count " + src("data/golden/fig5.ofs") + " -k 3:1").status, 1);
}

TEST_F(Cli, Check) {
  auto ok = run(kAlphabet + " check " + src("data/golden/fig5.ofs") + " baeks");
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out, "b ae k s\taccepted\t(Syllable (Coda_Onset b) (Peak ae) (Coda_Onset ks))\n");
  auto no = run("check " + src("data/golden/fig5.ofs") + " ae ae");
  EXPECT_EQ(no.status, 0);
  EXPECT_EQ(no.out, "ae ae\trejected\n");
}

TEST_F(Cli, Enumerate) {
  auto r = run("enumerate " + src("data/golden/fig5.ofs") + " --max-k 3 --limit 5");
  ASSERT_EQ(r.status, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "slots\tword\tderivation");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.rfind("3\t", 0), 0u) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 5u);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
  EXPECT_EQ(run("--format xml stats " + src("data/golden/fig4.ofs")).status, 1);
  EXPECT_EQ(run("--format dot stats " + src("data/golden/fig4.ofs")).status, 1);
}

TEST_F(Cli, ManifestIsReproducible) {
  const std::string args = kAlphabet + " instantiate " + src("prototypes/syllable.ofsp") + " " +
                           src("data/english_fig3.txt") + " -o " + tmp("m.ofs");
  ASSERT_EQ(run("--manifest " + tmp("a.json") + " " + args).status, 0);
  ASSERT_EQ(run("--manifest " + tmp("b.json") + " " + args).status, 0);
  const auto a = read_text_file(tmp("a.json"));
  EXPECT_EQ(a, read_text_file(tmp("b.json")));
  EXPECT_NE(a.find("\"sha256\""), std::string::npos);
  EXPECT_NE(a.find("\"instantiate\""), std::string::npos);
}
