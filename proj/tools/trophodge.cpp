#include "trophodge/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace trophodge;

namespace {

enum Exit : int {
    ok = 0,
    verify_failed = 1,
    parse_error = 2,
    invalid_fan = 3,
    cohomology_error = 4,
    not_smooth = 5,
    unbalanced = 6,
};

struct Source {
    std::string builtin;
    std::string input;
};

void add_source(CLI::App* cmd, Source& s)
{
    cmd->add_option("--builtin", s.builtin,
                    "built-in fan: p1, projective_space(n), affine_space(n), torus(n), hirzebruch(a) "
                    "[rays e1, e2, -e1+a*e2, -e2], blowup_p2, product(f,g)");
    cmd->add_option("--input", s.input, "JSON file with a fan (or, for cohomology, a complex)");
}

json load_source_json(const Source& s)
{
    if (!s.builtin.empty() && !s.input.empty())
        throw InputError("give either --builtin or --input, not both");
    if (!s.builtin.empty())
        return json(s.builtin);
    if (s.input.empty())
        throw InputError("no fan given (use --builtin or --input)");
    return read_json_file(s.input);
}

std::string label(const Source& s) { return s.builtin.empty() ? s.input : s.builtin; }

void emit(const std::string& text, const std::string& output)
{
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out)
        throw InputError("cannot write '" + output + "'");
    out << text;
}

IntVec parse_ray(const std::string& s)
{
    std::string t = s;
    t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == '[' || c == ']' || c == '(' || c == ')' || c == ' '; }),
            t.end());
    IntVec v;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw InputError("");
        } catch (const std::exception&) {
            throw InputError("cannot parse ray '" + s + "'");
        }
    }
    if (v.empty())
        throw InputError("empty ray");
    return v;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tropical cohomology, weight spectral sequences and Minkowski weights of toric fans"};
    app.require_subcommand(1);
    std::string format = "tsv";
    std::string output;

    Source src;

    auto* validate = app.add_subcommand("fan-validate", "check a fan and print its basic invariants");
    add_source(validate, src);

    auto* coh = app.add_subcommand("cohomology", "tropical cohomology h^{p,q}");
    add_source(coh, src);
    std::optional<std::size_t> opt_p, opt_q;
    bool all = false;
    bool reps = false;
    coh->add_option("--p", opt_p, "degree p");
    coh->add_option("--q", opt_q, "degree q");
    coh->add_flag("--all", all, "full table (default)");
    coh->add_flag("--representatives", reps, "with --p/--q and json output: emit representative cocycles");

    auto* wss = app.add_subcommand("weightss", "weight spectral sequence page of a smooth fan");
    add_source(wss, src);
    int level = 2;
    wss->add_option("--level", level, "page: 1 or 2")->check(CLI::IsMember({1, 2}));

    auto* chow = app.add_subcommand("chow", "dimensions of Minkowski weight spaces");
    add_source(chow, src);
    std::optional<std::size_t> codim;
    chow->add_option("--codim", codim, "codimension (default: all)");

    auto* verify = app.add_subcommand("verify", "run all comparison checks, JSON report");
    add_source(verify, src);
    bool all_builtins = false;
    bool corrupt = false;
    verify->add_flag("--all-builtins", all_builtins, "verify every built-in zoo fan");
    verify->add_flag("--corrupt-d1-sign", corrupt, "negate one block of d_1 (negative control)")->group("");

    auto* pairing = app.add_subcommand("pair", "pair H^{k,k} basis cocycles with a weighted cycle");
    add_source(pairing, src);
    std::string weights_path;
    pairing->add_option("--weights", weights_path, "weight file")->required();

    auto* sub = app.add_subcommand("subdivide", "star subdivision of a fan along a ray, printed as JSON");
    add_source(sub, src);
    std::string ray;
    sub->add_option("--ray", ray, "ray, e.g. 1,1")->required();

    for (auto* c : {validate, coh, wss, chow, verify, pairing, sub}) {
        c->add_option("--output", output, "write to file instead of stdout");
        c->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::parse_error;
    }

    try {
        if (validate->parsed()) {
            Fan f = fan_from_json(load_source_json(src));
            std::ostringstream os;
            os << "cones=" << f.num_cones() << " smooth=" << yes_no(f.is_smooth())
               << " complete=" << yes_no(is_complete(f)) << " f=" << format_vec(f.f_vector()) << '\n';
            emit(os.str(), output);
            return Exit::ok;
        }

        if (sub->parsed()) {
            Fan f = fan_from_json(load_source_json(src));
            Fan g = star_subdivision(f, parse_ray(ray));
            emit(fan_to_json(g).dump(2) + "\n", output);
            return Exit::ok;
        }

        if (coh->parsed()) {
            json j = load_source_json(src);
            std::unique_ptr<TropComplex> cx;
            if (j.is_object() && j.contains("cells"))
                cx = std::make_unique<TropComplex>(complex_from_json(j));
            else
                cx = std::make_unique<TropComplex>(tautological_complex(fan_from_json(j)));
            const std::size_t n = cx->base_fan().rank();
            if (opt_p.has_value() != opt_q.has_value())
                throw InputError("--p and --q go together");
            if (opt_p && !all) {
                if (*opt_p > n || *opt_q > n)
                    throw InputError("degrees must lie in 0.." + std::to_string(n));
                auto r = cohomology(*cx, *opt_p, *opt_q);
                if (format == "json") {
                    json rec = {{"p", r.p}, {"q", r.q}, {"dim", r.dim}};
                    if (reps) {
                        json rs = json::array();
                        for (const auto& v : r.representatives)
                            rs.push_back(vec_to_json(v));
                        rec["representatives"] = rs;
                        rec["model"] = r.model == Model::cellular ? "cellular" : "order_complex";
                    }
                    emit(rec.dump(2) + "\n", output);
                } else {
                    emit("p\tq\tdim\n" + std::to_string(r.p) + "\t" + std::to_string(r.q) + "\t" +
                             std::to_string(r.dim) + "\n",
                         output);
                }
                return Exit::ok;
            }
            auto h = betti_table(*cx);
            emit(format == "json" ? betti_to_json(h).dump(2) + "\n" : betti_to_tsv(h), output);
            return Exit::ok;
        }

        if (wss->parsed()) {
            Fan f = fan_from_json(load_source_json(src));
            SSPage page = e1_page(f);
            if (level == 2)
                page = e2_page(page);
            emit(format == "json" ? page_to_json(page).dump(2) + "\n" : page_to_tsv(page), output);
            return Exit::ok;
        }

        if (chow->parsed()) {
            Fan f = fan_from_json(load_source_json(src));
            std::ostringstream os;
            json arr = json::array();
            if (format == "tsv")
                os << "codim\tdim\n";
            for (std::size_t p = 0; p <= f.rank(); ++p) {
                if (codim && *codim != p)
                    continue;
                std::size_t d = chow_dim(f, p);
                os << p << '\t' << d << '\n';
                arr.push_back({{"codim", p}, {"dim", d}});
            }
            if (codim && *codim > f.rank())
                throw InputError("codimension must lie in 0.." + std::to_string(f.rank()));
            emit(format == "json" ? arr.dump(2) + "\n" : os.str(), output);
            return Exit::ok;
        }

        if (verify->parsed()) {
            VerifyOptions opt;
            opt.d1.corrupt_sign = corrupt;
            std::vector<std::pair<std::string, Fan>> fans;
            if (all_builtins) {
                if (!src.builtin.empty() || !src.input.empty())
                    throw InputError("--all-builtins takes no fan");
                for (const auto& name : zoo_names())
                    fans.emplace_back(name, builtin(name));
            } else {
                fans.emplace_back(label(src), fan_from_json(load_source_json(src)));
            }
            json report = json::array();
            bool pass = true;
            for (const auto& [name, f] : fans) {
                auto v = verify_fan(name, f, opt);
                pass = pass && v.pass();
                report.push_back(v.to_json());
            }
            emit(json{{"pass", pass}, {"fans", report}}.dump(2) + "\n", output);
            return pass ? Exit::ok : Exit::verify_failed;
        }

        if (pairing->parsed()) {
            std::shared_ptr<const Fan> fan;
            if (!src.builtin.empty() || !src.input.empty())
                fan = std::make_shared<const Fan>(fan_from_json(load_source_json(src)));
            WeightInput in = weights_from_json(read_json_file(weights_path), fan);
            TropComplex cx = tautological_complex(in.fan);
            TropCycle z;
            if (in.divisor) {
                z = divisor_combination(cx, in.divisor_coeffs);
            } else {
                MinkowskiWeight w = make_weight(in.fan, in.codim, in.entries);
                auto bal = balancing_check(w);
                if (!bal.balanced) {
                    std::cerr << "unbalanced weight:\n";
                    for (const auto& v : bal.violations)
                        std::cerr << "  at cone " << format_vec(in.fan->cone_rays(v.cone)) << ": sum "
                                  << vec_to_json(v.sum).dump() << '\n';
                    return Exit::unbalanced;
                }
                z = cycle_class(cx, w);
            }
            auto c = build_cochain_complex(cx, z.k);
            auto h = cohomology(c, z.k);
            json values = json::array();
            std::ostringstream os;
            for (std::size_t i = 0; i < h.representatives.size(); ++i) {
                Rational v = pair(h.representatives[i], z);
                values.push_back(to_string(v));
                os << (i ? "\t" : "") << to_string(v);
            }
            os << '\n';
            json rec = {{"k", z.k}, {"pairings", values}, {"boundary", is_boundary(c, z)}};
            emit(format == "json" ? rec.dump(2) + "\n" : os.str(), output);
            return Exit::ok;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::parse_error;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::parse_error;
    } catch (const FanError& e) {
        std::cerr << "invalid fan: " << e.what() << '\n';
        return Exit::invalid_fan;
    } catch (const WeightError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::not_smooth;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::cohomology_error;
    }
    return Exit::ok;
}
