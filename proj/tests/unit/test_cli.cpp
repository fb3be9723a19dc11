#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>

namespace gt = graphcorpus::testing;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GRAPHCORPUS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Cli, ExitCodes) {
    gt::ScratchDir dir("cli");
    const auto cfg = gt::write_fixture_config(dir.path()).string();
    EXPECT_EQ(run_cli("ingest -c " + cfg), 0);
    EXPECT_EQ(run_cli("describe -c " + cfg + " -d citeworld -n n01 -n n02"), 0);
    EXPECT_EQ(run_cli("describe -c " + cfg + " -d citeworld -n n404"), 1);
    EXPECT_EQ(run_cli("describe -c " + cfg + " -d citeworld --all -n n01"), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
    EXPECT_EQ(run_cli("ingest -c " + (dir.path() / "missing.json").string()), 1);

    const auto small = gt::write_fixture_config(dir.path() / "small", {{"selection", {{"token_limit", 10}}}}).string();
    EXPECT_EQ(run_cli("describe -c " + small + " -d citeworld -n n01"), 2);

    const auto remote = gt::write_fixture_config(
        dir.path() / "remote",
        {{"llm", {{"mode", "remote"}, {"endpoint", "http://127.0.0.1:1/v1/chat/completions"}, {"model", "m"},
                  {"max_retries", 0}}}}).string();
    EXPECT_EQ(run_cli("generate -c " + remote), 3);
}

TEST(Cli, GenerateThenSplitSucceeds) {
    gt::ScratchDir dir("cli_generate");
    const auto cfg = gt::write_fixture_config(dir.path()).string();
    EXPECT_EQ(run_cli("generate -c " + cfg), 0);
    EXPECT_EQ(run_cli("split -c " + cfg + " -j 2"), 0);
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "out" / "manifest.json"));
}
