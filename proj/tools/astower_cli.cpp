#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "astower/bench.hpp"
#include "astower/serialize.hpp"
#include "astower/verify.hpp"

namespace {

using namespace astower;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitInvalid = 2;

std::vector<word> parse_coeffs(const std::string& s) {
    std::vector<word> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

bool parse_levels(const std::string& s, std::uint32_t& lo, std::uint32_t& hi) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        lo = hi = std::uint32_t(std::stoul(s));
        return true;
    }
    lo = std::uint32_t(std::stoul(s.substr(0, dots)));
    hi = std::uint32_t(std::stoul(s.substr(dots + 2)));
    return lo <= hi;
}

int cmd_build(word p, std::size_t d, std::size_t k, const std::string& q0_str,
              const std::string& out_path, bool frobenius_tables) {
    PrimeModulus m(p);
    PrimePoly q0(m);
    if (!q0_str.empty()) {
        q0 = PrimePoly(m, parse_coeffs(q0_str));
        if (std::size_t(q0.degree()) != d && d != 0)
            throw std::invalid_argument("--q0 degree does not match -d");
    } else {
        if (d == 0) throw std::invalid_argument("need -d or --q0");
        q0 = find_irreducible(m, d);
    }
    TowerOptions opts;
    opts.frobenius_tables = frobenius_tables;
    TowerDescriptor t = build_tower(m, q0, k, opts);
    save_tower(t, out_path);
    std::cout << "built tower p=" << p << " d=" << t.d << " k=" << k << " (top degree "
              << t.level_size(k) << ") -> " << out_path << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& tower_path, bool exhaustive, std::uint64_t seed) {
    TowerDescriptor t = load_tower(tower_path);
    verify::VerifyOptions opts;
    opts.exhaustive = exhaustive;
    opts.seed = seed;
    std::vector<verify::CheckResult> results = verify::verify_tower(t, opts);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name;
        if (!r.pass) std::cout << ": " << r.detail;
        std::cout << "\n";
        if (!r.pass && ok) {
            ok = false;
            std::cerr << "first failing invariant: " << r.name << "\n";
        }
    }
    return ok ? kExitOk : kExitInvariant;
}

int cmd_bench(const std::string& tower_path, const std::string& ops_str,
              const std::string& levels_str, const std::string& csv_path, int reps,
              std::uint64_t seed, const std::string& general_path) {
    TowerDescriptor t = load_tower(tower_path);
    std::uint32_t lo = 1, hi = std::uint32_t(t.height());
    if (!levels_str.empty() && !parse_levels(levels_str, lo, hi))
        throw std::invalid_argument("--levels: expected A..B");

    std::vector<std::string> ops;
    if (ops_str.empty() || ops_str == "all") {
        ops = {"push_down", "lift_up", "elem_mul", "elem_inv"};
        if (t.options.frobenius_tables) {
            ops.push_back("iter_frobenius");
            ops.push_back("pseudotrace");
        }
    } else {
        std::stringstream ss(ops_str);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) ops.push_back(item);
    }

    GeneralTower g;
    const GeneralTower* gp = nullptr;
    if (!general_path.empty()) {
        g = general_tower_from_json(load_text(general_path), t);
        if (!g.images_ready()) compute_images(g);
        gp = &g;
    }

    std::vector<BenchRecord> records = run_bench(t, ops, lo, hi, reps, seed, gp);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open csv path");
        write_csv(out, records);
    }
    write_csv(std::cout, records);
    for (const std::string& op : ops) {
        if (std::count_if(records.begin(), records.end(),
                          [&](const BenchRecord& r) { return r.op == op; }) >= 2)
            std::cout << "# loglog slope " << op << " = " << loglog_slope(records, op) << "\n";
    }
    return kExitOk;
}

int cmd_solve(const std::string& tower_path, const std::string& elem_path,
              const std::string& out_path) {
    TowerDescriptor t = load_tower(tower_path);
    TowerElement alpha = element_from_json(load_text(elem_path), t);
    TowerElement delta;
    try {
        delta = solve_artin_schreier(alpha);
    } catch (const std::domain_error& e) {
        std::cerr << "trace obstruction: " << e.what() << "\n";
        return kExitInvariant;
    }
    std::string out = element_to_json(delta);
    if (!out_path.empty()) save_text(out, out_path);
    else std::cout << out << "\n";
    return kExitOk;
}

int cmd_iso(const std::string& tower_path, const std::string& general_path, bool self,
            std::size_t self_k, const std::string& apply_path, const std::string& invert_path,
            const std::string& out_path) {
    TowerDescriptor t = load_tower(tower_path);
    GeneralTower g;
    if (self) {
        g = verify::self_general_tower(t, self_k ? self_k : t.height());
    } else if (!general_path.empty()) {
        g = general_tower_from_json(load_text(general_path), t);
        if (!g.images_ready()) compute_images(g);
    } else {
        throw std::invalid_argument("iso: need --general or --self");
    }

    if (!apply_path.empty()) {
        GeneralElement v = general_element_from_json(load_text(apply_path), t);
        std::string out = element_to_json(apply_isomorphism(g, v));
        if (!out_path.empty()) save_text(out, out_path);
        else std::cout << out << "\n";
        return kExitOk;
    }
    if (!invert_path.empty()) {
        TowerElement v = element_from_json(load_text(invert_path), t);
        std::string out = general_element_to_json(apply_inverse(g, v));
        if (!out_path.empty()) save_text(out, out_path);
        else std::cout << out << "\n";
        return kExitOk;
    }
    // default action: emit the general tower with its images
    std::string out = general_tower_to_json(g);
    if (!out_path.empty()) save_text(out, out_path);
    else std::cout << out << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic in Artin-Schreier towers over prime fields"};
    app.require_subcommand(1);

    word p = 2;
    std::size_t d = 0, k = 0, self_k = 0;
    std::string q0_str, out_path, tower_path, csv_path, ops_str, levels_str;
    std::string general_path, apply_path, invert_path, elem_path;
    bool exhaustive = false, no_frobenius = false, self = false;
    int reps = 5;
    std::uint64_t seed = 1;

    CLI::App* build = app.add_subcommand("build", "construct a tower and write it to JSON");
    build->add_option("-p", p, "characteristic (prime)")->required();
    build->add_option("-d", d, "degree of U_0 over F_p");
    build->add_option("-k", k, "number of levels above U_0")->required();
    build->add_option("--q0", q0_str, "Q_0 coefficients, constant first, comma separated");
    build->add_option("-o,--out", out_path, "output path")->required();
    build->add_flag("--no-frobenius-tables", no_frobenius,
                    "skip pseudotrace table precomputation");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites on a tower");
    verify_cmd->add_option("tower", tower_path, "tower JSON file")->required();
    verify_cmd->add_flag("--exhaustive", exhaustive, "basis-exhaustive checks on every level");
    verify_cmd->add_option("--seed", seed, "random seed");

    CLI::App* bench = app.add_subcommand("bench", "time core operations, CSV output");
    bench->add_option("tower", tower_path, "tower JSON file")->required();
    bench->add_option("--ops", ops_str, "comma list of ops (default: embedding + arithmetic)");
    bench->add_option("--levels", levels_str, "level range A..B");
    bench->add_option("--csv", csv_path, "CSV output path");
    bench->add_option("--reps", reps, "repetitions per measurement (median)");
    bench->add_option("--seed", seed, "random seed");
    bench->add_option("--general", general_path, "general tower file for sigma ops");

    CLI::App* solve = app.add_subcommand("solve", "solve X^p - X = alpha in the tower");
    solve->add_option("tower", tower_path, "tower JSON file")->required();
    solve->add_option("alpha", elem_path, "element JSON file")->required();
    solve->add_option("-o,--out", out_path, "output path");

    CLI::App* iso = app.add_subcommand("iso", "isomorphism with a general tower");
    iso->add_option("tower", tower_path, "tower JSON file")->required();
    iso->add_option("--general", general_path, "general tower JSON file");
    iso->add_flag("--self", self, "use the primitive tower's own generators");
    iso->add_option("--self-k", self_k, "height for --self (default: full)");
    iso->add_option("--apply", apply_path, "apply sigma to a general element file");
    iso->add_option("--invert", invert_path, "apply sigma^{-1} to an element file");
    iso->add_option("-o,--out", out_path, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(p, d, k, q0_str, out_path, !no_frobenius);
        if (verify_cmd->parsed()) return cmd_verify(tower_path, exhaustive, seed);
        if (bench->parsed())
            return cmd_bench(tower_path, ops_str, levels_str, csv_path, reps, seed, general_path);
        if (solve->parsed()) return cmd_solve(tower_path, elem_path, out_path);
        if (iso->parsed())
            return cmd_iso(tower_path, general_path, self, self_k, apply_path, invert_path,
                           out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInvalid;
}
