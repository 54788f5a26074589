// End-to-end exit-code and determinism contract for the command-line tool.
// Usage: moutard_cli_contract <path-to-moutard-binary>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "[PASS]" : "[FAIL]", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& cmd) {
    const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    f << body;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <moutard-binary>\n", argv[0]);
        return 2;
    }
    const std::string bin = argv[1];
    const fs::path work = fs::temp_directory_path() / "moutard_cli_contract";
    fs::remove_all(work);
    fs::create_directories(work);

    const std::string base_cfg = R"({
  "energy": -1.0,
  "alpha": 3.141592653589793,
  "grid": {"r_min": 0.3, "r_max": 4.0, "n_radial": 5, "n_angular": 4},
  "z_samples": [[1.0, 0.5]],
  "fd_step": 0.002,
  "quadrature": {"rel_tol": 1e-9, "abs_tol": 1e-11, "max_subdivisions": 4000, "radial_cutoff": 0}
})";
    write_file(work / "base.json", base_cfg);

    // 1. All five subcommands succeed on a valid config.
    for (const std::string sub : {"green", "spectrum", "check --which symmetry", "create",
                                  "annihilate"}) {
        const std::string out = (work / ("out_" + sub.substr(0, 5))).string();
        const int code = run(bin + " " + sub + " --config " + (work / "base.json").string() +
                             " --out " + out);
        expect(code == 0, "exit 0: " + sub);
    }

    // 2. Determinism: identical config -> byte-identical outputs.
    {
        const fs::path o1 = work / "det1";
        const fs::path o2 = work / "det2";
        run(bin + " green --config " + (work / "base.json").string() + " --out " + o1.string());
        run(bin + " green --config " + (work / "base.json").string() + " --out " + o2.string());
        bool same = true;
        for (const auto& entry : fs::directory_iterator(o1)) {
            const fs::path other = o2 / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) same = false;
        }
        expect(same, "byte-identical reruns (green)");

        const fs::path a1 = work / "det3";
        const fs::path a2 = work / "det4";
        run(bin + " annihilate --config " + (work / "base.json").string() + " --out " +
            a1.string());
        run(bin + " annihilate --config " + (work / "base.json").string() + " --out " +
            a2.string());
        same = true;
        for (const auto& entry : fs::directory_iterator(a1)) {
            const fs::path other = a2 / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) same = false;
        }
        expect(same, "byte-identical reruns (annihilate)");
    }

    // 3. Config errors -> exit 2.
    {
        write_file(work / "bad_energy.json", R"({"energy": 1.0})");
        expect(run(bin + " green --config " + (work / "bad_energy.json").string()) == 2,
               "exit 2: positive energy");
        write_file(work / "bad_z.json", R"({"energy": -1.0, "z_samples": [[0.0, 0.0]]})");
        expect(run(bin + " green --config " + (work / "bad_z.json").string()) == 2,
               "exit 2: z = 0 sample");
        expect(run(bin + " create --config " + (work / "bad_energy.json").string()) == 2,
               "exit 2: create without alpha");
        expect(run(bin + " green --config " + (work / "missing.json").string()) == 2,
               "exit 2: missing config file");
        expect(run(bin + " frobnicate") == 2, "exit 2: unknown subcommand");
    }

    // 4. Numerical failure -> exit 3 (starved quadrature budget).
    {
        const std::string starved = R"({
  "energy": -1.0,
  "alpha": 3.141592653589793,
  "grid": {"r_min": 0.3, "r_max": 4.0, "n_radial": 4, "n_angular": 4},
  "z_samples": [[1.0, 0.5]],
  "quadrature": {"rel_tol": 1e-14, "abs_tol": 1e-16, "max_subdivisions": 8}
})";
        write_file(work / "starved.json", starved);
        expect(run(bin + " green --config " + (work / "starved.json").string() + " --out " +
                   (work / "out_starved").string()) == 3,
               "exit 3: quadrature budget exhausted");
    }

    // 5. Failed acceptance checks -> exit 4 (wrong integration constant).
    {
        const std::string off = R"({
  "energy": -1.0,
  "alpha": 3.141592653589793,
  "grid": {"r_min": 0.3, "r_max": 4.0, "n_radial": 5, "n_angular": 4},
  "z_samples": [[1.0, 0.5]],
  "fd_step": 0.002,
  "seed_overrides": {"c_ff": 0.7}
})";
        write_file(work / "offconst.json", off);
        expect(run(bin + " annihilate --config " + (work / "offconst.json").string() + " --out " +
                   (work / "out_off").string()) == 4,
               "exit 4: failed scenario checks");
    }

    // 6. Flag overrides take effect (alpha via flag alone).
    {
        write_file(work / "noalpha.json", R"({"energy": -1.0,
  "grid": {"r_min": 0.3, "r_max": 4.0, "n_radial": 5, "n_angular": 4}})");
        expect(run(bin + " spectrum --config " + (work / "noalpha.json").string() +
                   " --alpha 3.141592653589793 --out " + (work / "out_flag").string()) == 0,
               "exit 0: alpha from flag");
    }

    std::printf("%s\n", failures == 0 ? "CLI CONTRACT: ALL PASS" : "CLI CONTRACT: FAILURES");
    return failures == 0 ? 0 : 1;
}
