// Pins the CLI file schemas: CSV header and JSON keys.
// Usage: golden <cli-path>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: golden <cli-path>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const char* tmp = std::getenv("TMPDIR");
    std::string dir = tmp ? tmp : "/tmp";
    int failures = 0;

    std::string csv = dir + "/affine_golden.csv";
    run(cli + " variance --B 3.5 --n 0 --R 0.5 --method trace --depth 1 --out " +
        csv + " > /dev/null");
    std::istringstream head(slurp(csv));
    std::string header;
    std::getline(head, header);
    const std::string want_header =
        "R,v_geometric,v_double,v_trace,expected,bound_area,bound_admissible,"
        "normalization";
    if (header != want_header) {
        std::cout << "[FAIL] CSV header changed: " << header << "\n";
        ++failures;
    }
    std::remove(csv.c_str());

    std::string js = dir + "/affine_golden.json";
    run(cli + " sample --B 3.5 --n 0 --R 0.5 --depth 1 --seed 3 --out " + js +
        " > /dev/null");
    nlohmann::json j = nlohmann::json::parse(slurp(js), nullptr, false);
    std::remove(js.c_str());
    if (j.is_discarded()) {
        std::cout << "[FAIL] sample JSON does not parse\n";
        ++failures;
    } else {
        for (const char* key : {"kernel", "region", "seed", "points"}) {
            if (!j.contains(key)) {
                std::cout << "[FAIL] sample JSON missing key " << key << "\n";
                ++failures;
            }
        }
        if (!j["region"].contains("center") || !j["region"].contains("R")) {
            std::cout << "[FAIL] region schema changed\n";
            ++failures;
        }
        for (const auto& p : j["points"])
            if (!p.is_array() || p.size() != 2) {
                std::cout << "[FAIL] point entries must be [x,s] pairs\n";
                ++failures;
                break;
            }
    }

    if (failures == 0) std::cout << "[PASS] file schemas stable\n";
    return failures == 0 ? 0 : 1;
}
