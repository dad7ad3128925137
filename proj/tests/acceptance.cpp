#include <cstdio>
#include <exception>
#include <string>

#include "quadrep/verify.hpp"

int main()
{
    using namespace quadrep::verify;
    int failed = 0;
    const auto criteria = all_criteria();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CriterionResult r;
        try {
            r = criteria[i]({});
        } catch (const std::exception& e) {
            r.id = "A" + std::to_string(i + 1);
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %s: %s (%s) [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(),
                    r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
