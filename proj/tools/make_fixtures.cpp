#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "knads/errors.hpp"
#include "knads/fixtures.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate oracle eigenvalue fixtures"};
    std::string out = "fixtures/oracle.json";
    app.add_option("--out", out, "output path");
    CLI11_PARSE(app, argc, argv);
    try {
        auto cases = knads::standard_fixture_cases();
        knads::fill_oracle(cases);
        std::filesystem::path path(out);
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        knads::write_fixtures(out, cases);
        for (const auto& c : cases)
            std::cout << c.name << ": " << c.eigenvalues.size() << " eigenvalues\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
