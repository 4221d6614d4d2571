#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(ZFPKIT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

template <class T>
void dump(const fs::path& p, const std::vector<T>& v) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("zfpkit_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string at(const char* name) const { return (dir / name).string(); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, WorkedExampleRoundTrip) {
  dump<double>(dir / "x.raw", {5632, 3072, 400, 68});
  Result c = run("compress " + at("x.raw") + " --dims 4 --k 13 --q 9 --beta 7 --out " + at("x.zfpk"));
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_NE(c.out.find("blocks 1"), std::string::npos);
  Result d = run("decompress " + at("x.zfpk") + " --out " + at("y.raw"));
  ASSERT_EQ(d.code, 0) << d.out;
  std::string y = slurp(dir / "y.raw");
  ASSERT_EQ(y.size(), 32u);
  double v[4];
  std::memcpy(v, y.data(), 32);
  EXPECT_EQ(v[0], 5824);
  EXPECT_EQ(v[1], 3136);
  EXPECT_EQ(v[2], 448);
  EXPECT_EQ(v[3], -192);
}

TEST_F(Cli, FloatRoundTrip) {
  std::vector<float> x(6 * 7);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<float>(i) * 0.25f - 3;
  dump(dir / "f.raw", x);
  ASSERT_EQ(run("compress " + at("f.raw") + " --dims 6x7 --scalar f32 --out " + at("f.zfpk")).code, 0);
  ASSERT_EQ(run("decompress " + at("f.zfpk") + " --out " + at("g.raw")).code, 0);
  std::string g = slurp(dir / "g.raw");
  ASSERT_EQ(g.size(), x.size() * 4);
  std::vector<float> y(x.size());
  std::memcpy(y.data(), g.data(), g.size());
  // values span under one binade per block, so 2^-20 relative is generous
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], x[i], 8 * 0x1p-20);
}

TEST_F(Cli, RejectsBetaInPartialRegime) {
  dump<double>(dir / "x.raw", {1, 2, 3, 4});
  Result c = run("compress " + at("x.raw") + " --dims 4 --k 13 --q 9 --beta 10 --out " + at("x.zfpk"));
  EXPECT_EQ(c.code, 1);
  EXPECT_NE(c.out.find("--allow-appendix-b"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "x.zfpk"));
  c = run("compress " + at("x.raw") + " --dims 4 --k 13 --q 9 --beta 10 --allow-appendix-b --out " + at("x.zfpk"));
  EXPECT_EQ(c.code, 0) << c.out;
}

TEST_F(Cli, RejectsWrongSizeAndVersion) {
  dump<double>(dir / "x.raw", {1, 2, 3});
  EXPECT_EQ(run("compress " + at("x.raw") + " --dims 4 --out " + at("x.zfpk")).code, 1);
  dump<double>(dir / "x.raw", {1, 2, 3, 4});
  ASSERT_EQ(run("compress " + at("x.raw") + " --dims 4 --out " + at("x.zfpk")).code, 0);
  std::string bytes = slurp(dir / "x.zfpk");
  bytes[4] = 9;
  std::ofstream(dir / "bad.zfpk", std::ios::binary) << bytes;
  Result d = run("decompress " + at("bad.zfpk") + " --out " + at("y.raw"));
  EXPECT_EQ(d.code, 1);
  EXPECT_NE(d.out.find("version"), std::string::npos);
}

TEST_F(Cli, BoundsReport) {
  Result r = run("bounds --d 1 --k 13 --q 9 --beta 7 --rho 7 --b 3 --emax 0 --be 8");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("K_beta = 0.19928"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("rate >= 10 "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("rho=7"), std::string::npos);
  EXPECT_EQ(run("bounds --d 1 --k 13 --q 9 --beta 10").code, 1);
}

TEST_F(Cli, Surface) {
  Result r = run("bounds --surface --out " + at("s.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  std::string csv = slurp(dir / "s.csv");
  EXPECT_EQ(csv.rfind("d,beta,log10_Kbeta\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 321);
}

TEST_F(Cli, SweepIsByteIdentical) {
  std::string args = "experiment --d 1 --k 13 --q 9 --rho-list 0,3 --trials 1 --seed 42 --out ";
  ASSERT_EQ(run(args + at("a.csv")).code, 0);
  ASSERT_EQ(run(args + at("b.csv")).code, 0);
  std::string a = slurp(dir / "a.csv");
  EXPECT_EQ(a, slurp(dir / "b.csv"));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 2 * 11);
}

TEST_F(Cli, GridAnalysis) {
  std::vector<double> x(20 * 12);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.1 * static_cast<double>(i)) + 2;
  dump(dir / "g.raw", x);
  Result r = run("experiment --grid " + at("g.raw") + " --dims 20x12 --k 53 --q 62 --beta-range 4:8");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("beta,max_block_err,K_beta,ratio\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}
