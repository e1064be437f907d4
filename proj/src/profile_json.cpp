#include "psusy/profile_json.hpp"

#include <fstream>
#include <set>

#include "psusy/error.hpp"

namespace psusy {

namespace {

using nlohmann::json;

[[noreturn]] void format_error(const std::string& msg) { throw Error(ErrorKind::profile_format, "profile JSON: " + msg); }

void require_fields(const json& j, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) format_error("unknown field \"" + key + "\"");
    for (const auto& key : allowed)
        if (!j.contains(key)) format_error("missing field \"" + key + "\"");
}

int get_int(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) format_error(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

double get_real(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) format_error(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

} // namespace

AlphaProfile profile_from_json(const json& j) {
    if (!j.is_object()) format_error("expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) format_error("\"kind\" must be a string");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "explicit") {
        require_fields(j, {"p", "kind", "alphas"});
        const int p = get_int(j, "p");
        const json& arr = j.at("alphas");
        if (!arr.is_array()) format_error("\"alphas\" must be an array");
        std::vector<double> alphas;
        for (const auto& v : arr) {
            if (!v.is_number()) format_error("\"alphas\" entries must be numbers");
            alphas.push_back(v.get<double>());
        }
        if (p < 1 || static_cast<int>(alphas.size()) != p + 1)
            format_error("\"alphas\" must hold p + 1 = " + std::to_string(p + 1) + " values");
        return AlphaProfile::explicit_values(std::move(alphas));
    }
    if (kind == "optimal-constant") {
        require_fields(j, {"p", "kind", "alpha_p"});
        return AlphaProfile::optimal_constant(get_int(j, "p"), get_real(j, "alpha_p"));
    }
    if (kind == "z-dependent-exact") {
        require_fields(j, {"p", "kind", "alpha_p", "m"});
        return AlphaProfile::z_dependent_exact(get_int(j, "p"), get_int(j, "m"), get_real(j, "alpha_p"));
    }
    format_error("unknown kind \"" + kind + "\"");
}

json profile_to_json(const AlphaProfile& profile) {
    json j{{"p", profile.order()}, {"kind", to_string(profile.kind())}};
    switch (profile.kind()) {
        case ProfileKind::explicit_values: j["alphas"] = profile.alphas(); break;
        case ProfileKind::optimal_constant: j["alpha_p"] = profile.alpha_p(); break;
        case ProfileKind::z_dependent_exact:
            j["alpha_p"] = profile.alpha_p();
            j["m"] = profile.exceptional_index();
            break;
    }
    return j;
}

AlphaProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) format_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        format_error(e.what());
    }
    return profile_from_json(j);
}

} // namespace psusy
