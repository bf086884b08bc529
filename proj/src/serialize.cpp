#include "astower/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace astower {

namespace {

using nlohmann::json;

json coeffs_json(const std::vector<word>& v) { return json(v); }

std::vector<word> coeffs_from(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("serialize: coefficient array expected");
    std::vector<word> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(e.get<word>());
    return out;
}

const char* kind_name(GeneratorKind k) {
    return k == GeneratorKind::linear ? "linear" : "power";
}

GeneratorKind kind_from(const std::string& s) {
    if (s == "linear") return GeneratorKind::linear;
    if (s == "power") return GeneratorKind::power;
    throw std::invalid_argument("serialize: unknown generator kind '" + s + "'");
}

} // namespace

std::string tower_to_json(const TowerDescriptor& t, bool include_tables) {
    json j;
    j["p"] = t.p();
    j["d"] = t.d;
    j["k"] = t.height();
    json levels = json::array();
    for (const LevelData& L : t.levels) {
        json lv;
        lv["q"] = coeffs_json(L.q.c);
        lv["kind"] = kind_name(L.kind);
        levels.push_back(std::move(lv));
    }
    j["levels"] = std::move(levels);
    if (include_tables) {
        json tables;
        tables["frobenius"] = t.options.frobenius_tables;
        json gamma = json::array(), bl = json::array(), bb = json::array(), dqi = json::array();
        for (const LevelData& L : t.levels) {
            gamma.push_back(coeffs_json(L.gamma));
            dqi.push_back(coeffs_json(L.dqinv.c));
            json lbl = json::array();
            for (const auto& [n, coeffs] : L.beta_little) {
                json e;
                e["n"] = n;
                e["coeffs"] = coeffs_json(coeffs);
                lbl.push_back(std::move(e));
            }
            bl.push_back(std::move(lbl));
            json lbb = json::array();
            for (const auto& coeffs : L.beta_big) lbb.push_back(coeffs_json(coeffs));
            bb.push_back(std::move(lbb));
        }
        tables["gamma"] = std::move(gamma);
        tables["dqinv"] = std::move(dqi);
        tables["beta_little"] = std::move(bl);
        tables["beta_big"] = std::move(bb);
        j["tables"] = std::move(tables);
    }
    return j.dump(2);
}

TowerDescriptor tower_from_json(const std::string& text) {
    json j = json::parse(text);
    PrimeModulus m(j.at("p").get<word>());
    std::size_t d = j.at("d").get<std::size_t>();
    std::size_t k = j.at("k").get<std::size_t>();
    const json& levels = j.at("levels");
    if (levels.size() != k + 1)
        throw std::invalid_argument("serialize: level count does not match k");

    bool has_tables = j.contains("tables");
    TowerOptions opts;
    opts.frobenius_tables =
        has_tables && j["tables"].value("frobenius", false);

    PrimePoly q0(m, coeffs_from(levels.at(0).at("q")));
    if (std::size_t(q0.degree()) != d)
        throw std::invalid_argument("serialize: deg Q_0 != d");
    if (trace_of_generator(q0) == 0)
        throw std::invalid_argument("serialize: stored Q_0 has zero generator trace");

    // Rebuild level data from the stored chain; stored betas are reused, the
    // rest of the precomputation is derived.
    TowerOptions base_opts = opts;
    base_opts.frobenius_tables = false;
    TowerDescriptor t = init_tower(m, q0, base_opts);
    if (!(t.levels[0].q == q0))
        throw std::invalid_argument("serialize: stored Q_0 was not in normalized form");
    t.options = opts;

    const json* tables = has_tables ? &j["tables"] : nullptr;
    for (std::size_t i = 1; i <= k; ++i) {
        const json& lv = levels.at(i);
        PrimePoly qi(m, coeffs_from(lv.at("q")));
        GeneratorKind kind = kind_from(lv.at("kind").get<std::string>());
        if (kind != generator_kind(i, m.p, d))
            throw std::invalid_argument("serialize: generator kind off schedule");
        if (!qi.is_monic() || std::size_t(qi.degree()) != t.level_size(i))
            throw std::invalid_argument("serialize: Q_i has wrong shape");
        LevelData L;
        L.kind = kind;
        L.red = Reducer(qi);
        L.trace = trace_series(qi);
        if (tables && tables->contains("dqinv") && i < (*tables)["dqinv"].size())
            L.dqinv = PrimePoly(m, coeffs_from((*tables)["dqinv"].at(i)));
        if (L.dqinv.is_zero()) {
            PrimePoly dq = derivative(qi);
            XgcdResult x = xgcd(dq, qi);
            if (x.g.degree() != 0) throw std::invalid_argument("serialize: Q_i not separable");
            L.dqinv = x.u;
        } else if (t.level_size(i) <= 65536) {
            if (!(L.red.reduce(mul(L.dqinv, derivative(qi))) == PrimePoly::one(m)))
                throw std::invalid_argument("serialize: stored derivative inverse is wrong");
        }
        L.q = std::move(qi);
        t.levels.push_back(std::move(L));
    }

    if (has_tables) {
        const json& tables = j["tables"];
        if (tables.contains("gamma")) {
            const json& gamma = tables["gamma"];
            for (std::size_t i = 0; i < t.levels.size() && i < gamma.size(); ++i)
                t.levels[i].gamma = coeffs_from(gamma.at(i));
        }
        if (tables.contains("beta_little")) {
            const json& bl = tables["beta_little"];
            for (std::size_t i = 0; i < t.levels.size() && i < bl.size(); ++i)
                for (const auto& e : bl.at(i))
                    t.levels[i].beta_little[e.at("n").get<word>()] =
                        coeffs_from(e.at("coeffs"));
        }
        if (tables.contains("beta_big")) {
            const json& bb = tables["beta_big"];
            for (std::size_t i = 0; i < t.levels.size() && i < bb.size(); ++i)
                for (const auto& e : bb.at(i))
                    t.levels[i].beta_big.push_back(coeffs_from(e));
        }
    }
    // Derive generator images not present in the file.
    for (std::size_t i = 0; i + 1 <= t.height(); ++i)
        if (t.levels[i].gamma.empty())
            t.levels[i].gamma = gamma_element(t, std::uint32_t(i)).coeffs;
    return t;
}

void save_tower(const TowerDescriptor& t, const std::string& path, bool include_tables) {
    save_text(tower_to_json(t, include_tables), path);
}

TowerDescriptor load_tower(const std::string& path) { return tower_from_json(load_text(path)); }

std::string element_to_json(const TowerElement& a) {
    json j;
    j["level"] = a.level;
    j["coeffs"] = coeffs_json(a.coeffs);
    return j.dump(2);
}

TowerElement element_from_json(const std::string& text, const TowerDescriptor& t) {
    json j = json::parse(text);
    return make_element(t, j.at("level").get<std::uint32_t>(), coeffs_from(j.at("coeffs")));
}

std::string general_element_to_json(const GeneralElement& a) {
    json j;
    j["level"] = a.level;
    j["coeffs"] = coeffs_json(a.coeffs);
    return j.dump(2);
}

GeneralElement general_element_from_json(const std::string& text, const TowerDescriptor& t) {
    json j = json::parse(text);
    return make_general(t, j.at("level").get<std::uint32_t>(), coeffs_from(j.at("coeffs")));
}

void save_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("serialize: cannot open '" + path + "' for writing");
    out << text << '\n';
}

std::string load_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("serialize: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string general_tower_to_json(const GeneralTower& g) {
    const TowerDescriptor& t = *g.tower;
    json j;
    j["p"] = t.p();
    j["d"] = t.d;
    j["k"] = g.height();
    j["q0"] = coeffs_json(t.levels[0].q.c);
    json gens = json::array();
    for (const GeneralElement& e : g.generators) gens.push_back(coeffs_json(e.coeffs));
    j["generators"] = std::move(gens);
    if (g.images_ready()) {
        json imgs = json::array();
        for (const TowerElement& s : g.images) imgs.push_back(coeffs_json(s.coeffs));
        j["images"] = std::move(imgs);
    }
    return j.dump(2);
}

GeneralTower general_tower_from_json(const std::string& text, const TowerDescriptor& t) {
    json j = json::parse(text);
    if (j.at("p").get<word>() != t.p() || j.at("d").get<std::size_t>() != t.d)
        throw std::invalid_argument("serialize: general tower does not match the descriptor");
    if (coeffs_from(j.at("q0")) != t.levels[0].q.c)
        throw std::invalid_argument("serialize: general tower Q_0 does not match the descriptor");
    std::size_t k = j.at("k").get<std::size_t>();
    const json& gens = j.at("generators");
    if (gens.size() != k)
        throw std::invalid_argument("serialize: generator count does not match k");
    std::vector<GeneralElement> generators;
    generators.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        generators.push_back(make_general(t, std::uint32_t(i), coeffs_from(gens.at(i))));
    GeneralTower g = make_general_tower(t, std::move(generators));
    if (j.contains("images")) {
        const json& imgs = j["images"];
        if (imgs.size() != k + 1)
            throw std::invalid_argument("serialize: image count does not match k+1");
        g.images_pd.assign(k + 1, BivariateElement{});
        for (std::size_t i = 0; i <= k; ++i) {
            TowerElement s = make_element(t, std::uint32_t(i), coeffs_from(imgs.at(i)));
            if (i >= 1) g.images_pd[i] = push_down(s);
            g.images.push_back(std::move(s));
        }
    }
    return g;
}

} // namespace astower
