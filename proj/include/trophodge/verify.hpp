// End-to-end checks of one smooth fan: E_2 against tropical cohomology,
// vanishing, degeneration, Chow groups and numerical equivalence.
#pragma once

#include "trophodge/io.hpp"

namespace trophodge {

inline const std::vector<std::string>& zoo_names()
{
    static const std::vector<std::string> names = {
        "p1",           "projective_space(2)", "projective_space(3)", "product(p1,p1)",
        "product(p1,product(p1,p1))", "hirzebruch(0)", "hirzebruch(1)", "hirzebruch(2)",
        "hirzebruch(3)", "blowup_p2", "torus(1)", "torus(2)",
        "torus(3)",     "affine_space(1)",     "affine_space(2)",     "affine_space(3)",
    };
    return names;
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FanVerification {
    std::string fan;
    std::vector<Check> checks;

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }

    json to_json() const
    {
        json cs = json::array();
        for (const auto& c : checks)
            cs.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        return {{"fan", fan}, {"pass", pass()}, {"checks", cs}};
    }
};

struct VerifyOptions {
    D1Options d1;
};

inline std::string format_table(const BettiTable& h)
{
    std::ostringstream os;
    for (std::size_t p = 0; p < h.size(); ++p) {
        os << (p ? " " : "") << '[';
        for (std::size_t q = 0; q < h[p].size(); ++q)
            os << (q ? "," : "") << h[p][q];
        os << ']';
    }
    return os.str();
}

inline FanVerification verify_fan(const std::string& label, const Fan& f, const VerifyOptions& opt = {})
{
    FanVerification out;
    out.fan = label;
    if (!f.is_smooth()) {
        out.checks.push_back({"smooth", false, "fan is not smooth"});
        return out;
    }
    const bool complete = is_complete(f);
    const std::size_t n = f.rank();
    BettiTable h = betti_table(tautological_complex(f));

    {
        Check c{"e2_vs_trop", false, ""};
        try {
            SSPage e1 = e1_page(f, opt.d1);
            if (!d1_squared_zero(e1)) {
                c.detail = "d_1 does not square to zero";
            } else {
                SSPage e2 = e2_page(e1);
                auto rep = compare_with_trop(e2, h);
                c.pass = rep.pass();
                for (const auto& e : rep.entries)
                    if (!e.pass())
                        c.detail += "E2(" + std::to_string(e.p) + "," + std::to_string(e.q) + ")=" +
                                    std::to_string(e.e2) + " vs h(" + std::to_string(e.q) + "," +
                                    std::to_string(e.p) + ")=" + std::to_string(e.trop) + "; ";
                if (c.pass)
                    c.detail = "h = " + format_table(h);
                if (complete) {
                    auto eu = euler_consistency(f, e2);
                    Check d{"degeneration", eu.pass(), "b = " + format_vec(eu.betti)};
                    if (!eu.pass())
                        d.detail += ", E2 totals = " + format_vec(eu.e2_totals);
                    out.checks.push_back(c);
                    c = d;
                }
            }
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        out.checks.push_back(c);
    }

    {
        Check c{"vanishing_above_diagonal", true, ""};
        for (std::size_t p = 0; p <= n; ++p)
            for (std::size_t q = p + 1; q <= n; ++q)
                if (h[p][q] != 0) {
                    c.pass = false;
                    c.detail += "h(" + std::to_string(p) + "," + std::to_string(q) + ")!=0; ";
                }
        out.checks.push_back(c);
    }

    if (!complete)
        return out;

    {
        Check c{"vanishing_q0", true, ""};
        for (std::size_t p = 1; p <= n; ++p)
            if (h[p][0] != 0) {
                c.pass = false;
                c.detail += "h(" + std::to_string(p) + ",0)!=0; ";
            }
        out.checks.push_back(c);
    }

    {
        Check c{"chow_vs_hpp", true, ""};
        std::vector<std::size_t> chow;
        for (std::size_t p = 0; p <= n; ++p) {
            chow.push_back(chow_dim(f, p));
            if (chow.back() != h[p][p])
                c.pass = false;
        }
        c.detail = "CH = " + format_vec(chow);
        out.checks.push_back(c);
    }

    if (n == 2) {
        auto rep = numerical_kernel_check(f);
        out.checks.push_back({"numerical_equivalence", rep.pass(),
                              "kernel dim " + std::to_string(rep.cycle_kernel.dim()) + " vs " +
                                  std::to_string(rep.intersection_kernel.dim())});
    }
    return out;
}

}  // namespace trophodge
