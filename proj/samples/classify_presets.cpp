// Classifies every named digit set and prints the verdict line plus the rule
// that settled it.

#include <cstdio>

#include "fracsq/classify.hpp"
#include "fracsq/presets.hpp"

int main() {
  using namespace fracsq;
  for (const std::string& name : preset_names()) {
    DigitSet d = preset_digit_set(name);
    Verdict v = classify(d);
    std::printf("%-10s %-6s via %-3s", name.c_str(), lambda_label(v.lambda),
                v.certificate.back().rule.c_str());
    if (v.dim_lambda1)
      std::printf("  segment fiber dim = 1 + log %lld / log %d = %.12f",
                  static_cast<long long>(v.dim_lambda1->m), v.dim_lambda1->n,
                  v.dim_lambda1->value);
    std::printf("  %s\n", recheck_certificate(d, v) ? "[rechecked]" : "[RECHECK FAILED]");
  }
  return 0;
}
