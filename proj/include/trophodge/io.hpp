// JSON and TSV formats. Integers are JSON numbers; rationals are "num/den" strings.
#pragma once

#include "trophodge/cycles.hpp"
#include "trophodge/weightss.hpp"

#include <fstream>
#include <json.hpp>

namespace trophodge {

using json = nlohmann::json;

/// Unreadable or malformed input (as opposed to well-formed but invalid data).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

namespace detail {

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline IntVec int_vec(const json& j)
{
    if (!j.is_array())
        throw InputError("expected an integer array");
    IntVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw InputError("expected an integer, got " + x.dump());
        v.push_back(x.get<long long>());
    }
    return v;
}

inline RaySet index_set(const json& j)
{
    if (!j.is_array())
        throw InputError("expected an array of ray indices");
    RaySet s;
    for (const auto& x : j) {
        if (!x.is_number_unsigned())
            throw InputError("expected a ray index, got " + x.dump());
        s.push_back(x.get<std::size_t>());
    }
    std::sort(s.begin(), s.end());
    return s;
}

inline Rational rational(const json& j)
{
    if (j.is_number_integer())
        return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const LinearAlgebraError& e) {
            throw InputError(e.what());
        }
    }
    throw InputError("expected an integer or a \"num/den\" string, got " + j.dump());
}

}  // namespace detail

/// { "rank": n, "rays": [[...]], "cones": [[ray indices of maximal cones]] }
/// or a string naming a built-in fan. Throws InputError on malformed JSON, FanError on invalid fans.
inline Fan fan_from_json(const json& j)
{
    if (j.is_string()) {
        try {
            return builtin(j.get<std::string>());
        } catch (const FanError& e) {
            throw InputError(e.what());
        }
    }
    const json& rank = detail::field(j, "rank");
    if (!rank.is_number_unsigned())
        throw InputError("'rank' must be a non-negative integer");
    std::vector<IntVec> rays;
    for (const auto& r : detail::field(j, "rays"))
        rays.push_back(detail::int_vec(r));
    std::vector<RaySet> cones;
    for (const auto& c : detail::field(j, "cones"))
        cones.push_back(detail::index_set(c));
    for (const auto& c : cones)
        for (auto i : c)
            if (i >= rays.size())
                throw FanError("cone refers to ray " + std::to_string(i) + " but only " +
                               std::to_string(rays.size()) + " rays are given");
    return Fan(rank.get<std::size_t>(), std::move(rays), cones);
}

inline json fan_to_json(const Fan& f)
{
    json rays = json::array();
    for (const auto& r : f.rays())
        rays.push_back(r);
    json cones = json::array();
    for (auto c : f.maximal_cones())
        cones.push_back(f.cone_rays(c));
    return {{"rank", f.rank()}, {"rays", rays}, {"cones", cones}};
}

/// A user complex: { "base_fan": <fan>, "cells": [{ "sedentarity": [...], "rays": [[...]] }] }.
inline TropComplex complex_from_json(const json& j)
{
    auto fan = std::make_shared<const Fan>(fan_from_json(detail::field(j, "base_fan")));
    std::vector<CellSpec> specs;
    for (const auto& c : detail::field(j, "cells")) {
        CellSpec s;
        RaySet sed = c.contains("sedentarity") ? detail::index_set(c.at("sedentarity")) : RaySet{};
        auto cone = fan->find(sed);
        if (!cone)
            throw ComplexError("sedentarity " + format_vec(sed) + " is not a cone of the base fan");
        s.sedentarity = *cone;
        for (const auto& r : detail::field(c, "rays"))
            s.rays.push_back(detail::int_vec(r));
        specs.push_back(std::move(s));
    }
    return TropComplex(fan, specs, Support::cells);
}

/// Contents of a weight file.
struct WeightInput {
    std::shared_ptr<const Fan> fan;
    bool divisor = false;                   // "kind": "divisor"
    std::size_t codim = 0;
    std::vector<std::pair<RaySet, Rational>> entries;
    std::vector<Rational> divisor_coeffs;   // one per ray when divisor
};

/// { "fan": <fan>, "codim": p, "kind": "minkowski" | "divisor",
///   "weights": [{ "cone": [ray indices], "w": "num/den" }] }
/// A divisor file lists coefficients a_ρ of Σ a_ρ D_ρ on single rays; omitted rays get 0.
inline WeightInput weights_from_json(const json& j, std::shared_ptr<const Fan> fallback = nullptr)
{
    WeightInput in;
    if (j.is_object() && j.contains("fan"))
        in.fan = std::make_shared<const Fan>(fan_from_json(j.at("fan")));
    else
        in.fan = std::move(fallback);
    if (!in.fan)
        throw InputError("weight file names no fan");
    std::string kind = j.value("kind", std::string("minkowski"));
    if (kind != "minkowski" && kind != "divisor")
        throw InputError("unknown weight kind '" + kind + "'");
    in.divisor = kind == "divisor";
    if (in.divisor) {
        in.codim = 1;
        in.divisor_coeffs.assign(in.fan->rays().size(), Rational(0));
    } else {
        const json& c = detail::field(j, "codim");
        if (!c.is_number_unsigned())
            throw InputError("'codim' must be a non-negative integer");
        in.codim = c.get<std::size_t>();
    }
    for (const auto& e : detail::field(j, "weights")) {
        RaySet cone = detail::index_set(detail::field(e, "cone"));
        Rational w = detail::rational(detail::field(e, "w"));
        if (in.divisor) {
            if (cone.size() != 1 || cone[0] >= in.divisor_coeffs.size())
                throw InputError("divisor entries must name a single ray");
            in.divisor_coeffs[cone[0]] += w;
        } else {
            in.entries.emplace_back(cone, w);
        }
    }
    return in;
}

inline json betti_to_json(const BettiTable& h)
{
    json out = json::array();
    for (std::size_t p = 0; p < h.size(); ++p)
        for (std::size_t q = 0; q < h[p].size(); ++q)
            out.push_back({{"p", p}, {"q", q}, {"dim", h[p][q]}});
    return out;
}

inline std::string betti_to_tsv(const BettiTable& h)
{
    std::ostringstream os;
    os << "p\tq\tdim\n";
    for (std::size_t p = 0; p < h.size(); ++p)
        for (std::size_t q = 0; q < h[p].size(); ++q)
            os << p << '\t' << q << '\t' << h[p][q] << '\n';
    return os.str();
}

inline json page_to_json(const SSPage& page)
{
    json entries = json::array();
    for (std::size_t p = 0; p <= page.n; ++p)
        for (std::size_t q = 0; q <= page.n; ++q)
            entries.push_back({{"p", p}, {"q", q}, {"dim", page.dim(p, q)}});
    return {{"level", page.level}, {"entries", entries}};
}

inline std::string page_to_tsv(const SSPage& page)
{
    std::ostringstream os;
    os << "p\tq\tdim\n";
    for (std::size_t p = 0; p <= page.n; ++p)
        for (std::size_t q = 0; q <= page.n; ++q)
            os << p << '\t' << q << '\t' << page.dim(p, q) << '\n';
    return os.str();
}

inline json vec_to_json(const QVec& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

inline json subspace_to_json(const QSubspace& s)
{
    json out = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i)
        out.push_back(vec_to_json(s.vector(i)));
    return out;
}

inline std::string comparison_to_tsv(const ComparisonReport& rep)
{
    std::ostringstream os;
    os << "p\tq\tE2\th_trop(q,p)\tstatus\n";
    for (const auto& e : rep.entries)
        os << e.p << '\t' << e.q << '\t' << e.e2 << '\t' << e.trop << '\t' << (e.pass() ? "pass" : "FAIL") << '\n';
    return os.str();
}

}  // namespace trophodge
