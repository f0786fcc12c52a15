// Integration checks for the gmle command-line tool. Takes the binary path
// as argv[1]; data files live in GMLE_DATA_DIR.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "  ok: " << what << "\n";
    } else {
        ++failures;
        std::cout << "  FAILED: " << what << "\n";
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {-1, ""};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-gmle>\n";
        return 2;
    }
    std::string bin = argv[1];
    std::string data = GMLE_DATA_DIR;
    using nlohmann::json;

    {
        std::cout << "partition subcommand\n";
        auto r = run(bin + " partition --graph " + data + "/mixed.json");
        expect(r.exit_code == 0, "exit code 0");
        json j = json::parse(r.out, nullptr, false);
        expect(!j.is_discarded(), "output is JSON");
        expect(j["U"] == json::array({1, 2}), "U = [1,2]");
        expect(j["W"] == json::array({3, 4}), "W = [3,4]");
    }
    {
        std::cout << "partition ordering violation\n";
        auto r = run(bin + " partition --graph " + data + "/mixed_badorder.json");
        expect(r.exit_code == 2, "exit code 2");
        json j = json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j.contains("error"), "structured error JSON");
        expect(j["error"] == "ordering", "error kind is ordering");
    }
    {
        std::cout << "ml-degree on the multi-edge graph\n";
        auto r = run(bin + " ml-degree --graph " + data + "/multiedge.json --seed 7");
        expect(r.exit_code == 2, "exit code 2");
        json j = json::parse(r.out, nullptr, false);
        expect(!j.is_discarded(), "output is JSON");
        expect(j["error"] == "positive-dimensional", "positive-dimensional error");
        expect(j["dim"] == 1, "dim 1");
        expect(j["degree"] == 2, "degree 2");
    }
    {
        std::cout << "ml-degree on the 4-cycle\n";
        auto r = run(bin + " ml-degree --graph " + data + "/cycle4.json --seed 7");
        expect(r.exit_code == 0, "exit code 0");
        json j = json::parse(r.out, nullptr, false);
        expect(j["mlDegree"] == 5, "ML degree 5");
    }
    {
        std::cout << "mle subcommand on the 4-cycle\n";
        auto r = run(bin + " mle --graph " + data + "/cycle4.json --cov " + data +
                     "/cov_cycle4.json");
        expect(r.exit_code == 0, "exit code 0");
        json j = json::parse(r.out, nullptr, false);
        expect(!j.is_discarded(), "output is JSON");
        double ml = std::stod(j["maxLogLik"].get<std::string>());
        expect(std::abs(ml - 6.62005) < 5e-5, "maxLogLik = 6.62005");
        expect(j["mlDegree"] == 5, "mlDegree 5");
        expect(j["optima"].size() == 1, "one optimum");
        // determinism: byte-identical output on a second run
        auto r2 = run(bin + " mle --graph " + data + "/cycle4.json --cov " + data +
                      "/cov_cycle4.json");
        expect(r.out == r2.out, "byte-identical reruns");
    }
    {
        std::cout << "score-equations subcommand with CSV data\n";
        auto r = run(bin + " score-equations --graph " + data + "/cycle4.json --data " + data +
                     "/data_cycle4.csv");
        expect(r.exit_code == 0, "exit code 0");
        json j = json::parse(r.out, nullptr, false);
        expect(j["generators"].size() == 14, "14 generators");
        expect(j["dim"] == 0, "dim 0");
        expect(j["degree"] == 5, "degree 5");
    }
    {
        std::cout << "solve subcommand\n";
        auto r = run(bin + " solve --graph " + data + "/mixed.json --cov " + data +
                     "/cov_mixed.json");
        expect(r.exit_code == 0, "exit code 0");
        json j = json::parse(r.out, nullptr, false);
        expect(j["solutions"].size() == 5, "5 solutions");
        int real = 0;
        for (const auto& s : j["solutions"]) real += s["isReal"].get<bool>() ? 1 : 0;
        expect(real == 3, "3 real solutions");
    }
    {
        std::cout << "check-pd subcommand\n";
        std::string pd_path = "cli_tmp_pd.json", npd_path = "cli_tmp_npd.json";
        {
            std::ofstream f(pd_path);
            f << "[[2, 1], [1, 2]]";
        }
        {
            std::ofstream f(npd_path);
            f << "[[1, 2], [2, 1]]";
        }
        auto r1 = run(bin + " check-pd --matrix " + pd_path);
        auto r2 = run(bin + " check-pd --matrix " + npd_path);
        expect(r1.exit_code == 0, "exit 0 for the PD matrix");
        expect(json::parse(r1.out)["positiveDefinite"] == true, "PD detected");
        expect(json::parse(r2.out)["positiveDefinite"] == false, "indefinite detected");
        std::remove(pd_path.c_str());
        std::remove(npd_path.c_str());
    }
    {
        std::cout << "malformed input\n";
        auto r = run(bin + " mle --graph does_not_exist.json --cov also_missing.json");
        expect(r.exit_code == 1, "exit code 1");
        json j = json::parse(r.out, nullptr, false);
        expect(!j.is_discarded() && j["error"] == "malformed-input", "malformed-input error");
        std::string bad_path = "cli_tmp_bad.json";
        {
            std::ofstream f(bad_path);
            f << "{\"vertices\": [1, 1]}";
        }
        auto r2 = run(bin + " partition --graph " + bad_path);
        expect(r2.exit_code == 1, "duplicate labels exit 1");
        std::remove(bad_path.c_str());
    }
    {
        std::cout << "--output writes a file\n";
        std::string out_path = "cli_tmp_out.json";
        auto r = run(bin + " partition --graph " + data + "/mixed.json --output " + out_path);
        expect(r.exit_code == 0, "exit code 0");
        expect(r.out.empty(), "stdout is quiet with --output");
        std::ifstream f(out_path);
        expect(f.good(), "output file exists");
        json j = json::parse(f, nullptr, false);
        expect(!j.is_discarded() && j["U"] == json::array({1, 2}), "file holds the result");
        std::remove(out_path.c_str());
    }

    if (failures) {
        std::cout << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
