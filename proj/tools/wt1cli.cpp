#include <wt1/wt1.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>

using namespace wt1;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3, kData = 4 };

Rat parse_rat(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json record_json(const ClassRecord& r)
{
    return {{"root_system", r.root_system}, {"m", r.m},     {"class", r.cls},
            {"n_g", r.n_g},                {"h_g", r.h_g}, {"N_g", r.N_g},
            {"exceptional", to_string(r.shade)}};
}

json report_json(const CheckReport& r) { return {{"ok", r.ok}, {"checked", r.checked}, {"issues", r.issues}}; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weight-one Jacobi forms: q-expansions, dimensions, vanishing tests and umbral tables"};
    app.require_subcommand(1);
    std::string data_override;
    app.add_option("--data-dir", data_override, "data directory (overrides WT1_DATA_DIR)");
    bool timing = false;
    app.add_flag("--timing", timing, "include wall-clock timings in reports");

    // qexp
    auto* qexp = app.add_subcommand("qexp", "print a truncated expansion as JSON");
    std::string qname, qorder = "2";
    i64 qm = 1, qr = 0, qa = 1, qb = 1, qi = 1;
    int qsign = -1;
    qexp->add_option("name", qname,
                     "theta | theta_pm | eta | quark | xi_1_12 | xi_1_8 | xi9_3A | xi9_6A | S_unary | S_E8_component")
        ->required();
    qexp->add_option("--order", qorder, "truncation order (integer or p/q)");
    qexp->add_option("--m", qm, "index");
    qexp->add_option("--r", qr, "residue");
    qexp->add_option("--sign", qsign, "sign for theta_pm")->check(CLI::IsMember({-1, 1}));
    qexp->add_option("--a", qa, "quark parameter a");
    qexp->add_option("--b", qb, "quark parameter b");
    qexp->add_option("--i", qi, "E8 component (1 or 2)");

    // dim
    auto* dim = app.add_subcommand("dim", "dimension of J_{1,m}(N)");
    DimQuery dq;
    std::string backend = "exact";
    dim->add_option("--m", dq.m, "index")->required()->check(CLI::PositiveNumber);
    dim->add_option("--N", dq.N, "level")->required()->check(CLI::PositiveNumber);
    dim->add_option("--M", dq.M, "auxiliary modulus (default: least admissible)");
    dim->add_option("--backend", backend, "exact | float | crt-float")->check(CLI::IsMember({"exact", "float", "crt-float"}));
    dim->add_option("--budget", dq.budget, "group element ceiling")->check(CLI::PositiveNumber);

    // vanish
    auto* van = app.add_subcommand("vanish", "exponent criterion");
    i64 vm = 1, vM = 1;
    van->add_option("--m", vm, "index")->required()->check(CLI::PositiveNumber);
    van->add_option("--M", vM, "modulus, m | M")->required()->check(CLI::PositiveNumber);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "settle every levels-table row");
    i64 sbudget = 10000000;
    sweep->add_option("--budget", sbudget, "per-row element ceiling")->check(CLI::PositiveNumber);

    // verify-tables
    auto* verify = app.add_subcommand("verify-tables", "reproduce the decomposition tables and audit the data");

    // rademacher
    auto* rad = app.add_subcommand("rademacher", "truncated Rademacher partial sums");
    i64 rn = 1, rm = 9, rK = 4;
    double tre = 0.0, tim = 1.0;
    int depth = 20;
    std::string rformat = "json";
    bool transpose = false;
    rad->add_option("--n", rn, "level of Gamma_0(n)")->check(CLI::PositiveNumber);
    rad->add_option("--m", rm, "index")->check(CLI::Range(2, 1000));
    rad->add_option("--K", rK, "truncation")->check(CLI::PositiveNumber);
    rad->add_option("--tau-re", tre, "Re tau");
    rad->add_option("--tau-im", tim, "Im tau")->check(CLI::PositiveNumber);
    rad->add_option("--depth", depth, "kernel series depth")->check(CLI::PositiveNumber);
    rad->add_option("--format", rformat, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    rad->add_flag("--transpose", transpose, "use the transposed multiplier");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (!data_override.empty()) setenv("WT1_DATA_DIR", data_override.c_str(), 1);

    try {
        if (*qexp) {
            Rat order = parse_rat(qorder);
            Series s;
            if (qname == "theta") s = theta_expansion(qm, qr, order);
            else if (qname == "theta_pm") s = theta_pm(qm, qr, qsign, order);
            else if (qname == "eta") s = eta_expansion(order);
            else if (qname == "quark") s = theta_quark(qa, qb, order);
            else if (qname == "S_unary") s = explicit_form(FormName::SUnary, order, {qm, qr});
            else if (qname == "S_E8_component") s = explicit_form(FormName::SE8, order, {qi});
            else s = explicit_form(qname, order);
            json out{{"name", qname}, {"series", s.to_json()}};
            if (s.index()) out["index"] = *s.index();
            emit(out);
            return kOk;
        }
        if (*dim) {
            dq.backend = parse_backend(backend);
            auto r = dim_j1(dq);
            json out{{"m", dq.m},
                     {"N", dq.N},
                     {"M", r.M},
                     {"backend", to_string(r.backend)},
                     {"method", "character-average"},
                     {"value", r.value},
                     {"elements", r.elements}};
            if (timing) out["elapsed"] = r.elapsed;
            emit(out);
            return kOk;
        }
        if (*van) {
            auto r = exponent_criterion(vm, vM);
            json out{{"m", vm}, {"M", vM}, {"result", r.vanishes() ? "vanishes" : "inconclusive"}};
            if (r.witness) out["witness"] = {{"r", r.witness->r}, {"s", r.witness->s}, {"t", r.witness->t}};
            emit(out);
            return kOk;
        }
        if (*sweep) {
            auto ds = load_dataset();
            auto rows = umbral_sweep(ds, sbudget);
            json arr = json::array();
            bool consistent = true;
            i64 skipped = 0;
            for (const auto& r : rows) {
                json j = record_json(r.record);
                j["method"] = to_string(r.method);
                if (r.method == SweepMethod::Skipped) {
                    j["estimated_cost"] = r.cost;
                    ++skipped;
                } else {
                    j["vanishes"] = r.vanishes;
                }
                if (r.dim) j["dim"] = *r.dim;
                // shading must coincide with the rows the lemma leaves open
                bool lemma = r.method == SweepMethod::Lemma;
                if (lemma != (r.record.shade == Shade::None)) consistent = false;
                if (r.method != SweepMethod::Skipped && r.vanishes != (r.record.shade != Shade::Orange)) consistent = false;
                arr.push_back(j);
            }
            emit({{"rows", arr}, {"consistent", consistent}, {"skipped", skipped}, {"data_schema", kDataSchemaVersion}});
            return consistent ? kOk : kFailed;
        }
        if (*verify) {
            auto ds = load_dataset();
            auto dec = verify_decompositions(ds);
            auto aud = coefficient_parity_audit(ds);
            auto x3 = verify_xi9_consistency("3A", Rat(6));
            auto x6 = verify_xi9_consistency("6A", Rat(6));
            bool ok = dec.ok && aud.ok && x3.ok && x6.ok;
            json digests = ds.digests;
            emit({{"decompositions", report_json(dec)},
                  {"parity_audit", report_json(aud)},
                  {"xi9_3A", report_json(x3)},
                  {"xi9_6A", report_json(x6)},
                  {"class_sizes", class_sizes(ds.chars)},
                  {"levels_rows", ds.levels.size()},
                  {"digests", digests},
                  {"data_schema", kDataSchemaVersion},
                  {"ok", ok}});
            return ok ? kOk : kFailed;
        }
        if (*rad) {
            RademacherParams p(rn, rm, rK, depth, theta_odd_multiplier(rm, transpose));
            auto sums = truncated_sums(p, cplx(tre, tim));
            if (rformat == "csv") {
                write_diagnostics_csv(std::cout, sums);
                return kOk;
            }
            json comps = json::array();
            for (Eigen::Index i = 0; i < sums.back().size(); ++i)
                comps.push_back({{"component", i + 1}, {"real", sums.back()(i).real()}, {"imag", sums.back()(i).imag()}});
            emit({{"n", rn}, {"m", rm}, {"K", rK}, {"depth", depth}, {"tau", {tre, tim}}, {"components", comps},
                  {"representatives", coset_reps(rn, rK).size()}});
            return kOk;
        }
    } catch (const ResourceLimit& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
