// Runs every acceptance criterion; one verdict line per criterion.

#include <iostream>
#include <string>

#include <csalign/acceptance.hpp>

int main(int argc, char** argv) {
    const std::string suite = argc > 1 ? argv[1] : "all";
    try {
        const auto results = csalign::run_acceptance(suite, {}, &std::cout);
        int failed = 0;
        for (const auto& r : results) failed += r.pass() ? 0 : 1;
        std::cout << "\n";
        for (const auto& r : results) csalign::print_result(std::cout, r, false);
        std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
        return failed ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << "\n";
        return 2;
    }
}
