#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mixprof {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

// Named property suites behind `mixprof verify`. Each returns one row per
// check; a suite passes when every row does.
std::vector<CheckResult> verify_lemma1(std::uint64_t seed = 7, int chains = 200);
std::vector<CheckResult> verify_corollaries(std::uint64_t seed = 11);
std::vector<CheckResult> verify_krawtchouk();
std::vector<CheckResult> verify_characters();
std::vector<CheckResult> verify_gelfand();
std::vector<CheckResult> verify_binomial_clt();

std::vector<CheckResult> run_verification_suite(const std::string& suite);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace mixprof
