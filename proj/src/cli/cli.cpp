#include "cli.hpp"

#include "CLI11.hpp"
#include "format.hpp"

#include "wavespec/errors.hpp"
#include "wavespec/hill_solver.hpp"
#include "wavespec/spectral_check.hpp"
#include "wavespec/stability_index.hpp"
#include "wavespec/threshold.hpp"
#include "wavespec/wave_profiles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

namespace wavespec::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::vector<double> L;
    std::optional<double> k;
    std::optional<double> omega;
    std::optional<std::size_t> grid_n;
    std::string format; ///< empty selects the command default
    std::string out;
    std::string preset;
    std::vector<double> k_list;
    std::string sweep;
    std::size_t samples = 256;
    std::size_t count = 5;
    std::size_t modes = 64;
    std::optional<double> constant_potential;
};

const std::vector<double> kTablePeriods = {2.0 * std::numbers::pi, 20.0, 50.0, 100.0};
const std::vector<double> kDnoidalRows = {0.1, 0.3, 0.5, 0.7, 0.9, 0.9999};

std::vector<double> cnoidal_rows(double L)
{
    std::vector<double> rows = {0.0001, 0.1, 0.3, 0.5, 0.7};
    if (L == 20.0)
        rows.insert(rows.end(), {0.744, 0.7449});
    else if (L == 50.0)
        rows.insert(rows.end(), {0.74521, 0.74523});
    else if (L == 100.0)
        rows.insert(rows.end(), {0.74528, 0.74529});
    else
        rows.insert(rows.end(), {0.739, 0.746});
    rows.insert(rows.end(), {0.9, 0.9999});
    return rows;
}

const std::vector<std::string> kReportColumns = {
    "family", "L",       "k",         "omega",   "A",  "theta",          "I",  "lphi_phi", "lphi_one",
    "det_schur", "det_raw", "det_prefactored", "det_closed_form", "nL", "nI", "nD", "K_ham", "verdict"};

WaveFamily require_family(const std::string& name)
{
    if (name.empty())
        throw UsageError("--family is required");
    const auto f = parse_family(name);
    if (!f)
        throw UsageError("unknown family '" + name + "' (expected ckdv-dnoidal, ckdv-cnoidal or gardner)");
    return *f;
}

double require_single_L(const Options& o)
{
    if (o.L.size() != 1)
        throw UsageError("--L is required (one value)");
    if (!(o.L.front() > 0.0) || !std::isfinite(o.L.front()))
        throw UsageError("--L must be positive");
    return o.L.front();
}

std::size_t grid_size(const Options& o)
{
    std::size_t n = 0;
    if (o.grid_n) {
        n = *o.grid_n;
    } else if (const char* env = std::getenv("WAVESPEC_GRID_N"); env && *env) {
        try {
            std::size_t pos = 0;
            n = std::stoul(env, &pos);
            if (pos != std::string(env).size())
                throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("WAVESPEC_GRID_N is not a positive integer: ") + env);
        }
    } else {
        return 0;
    }
    if (n < 64 || n % 2 != 0)
        throw UsageError("grid size must be an even integer >= 64");
    return n;
}

double resolve_k(const Options& o, WaveFamily family, double L)
{
    if (o.k.has_value() == o.omega.has_value())
        throw UsageError("exactly one of --k and --omega is required");
    if (o.omega)
        return omega_to_k(family, L, *o.omega).k();
    return Modulus(*o.k).k();
}

std::string output_format(const Options& o, const char* fallback)
{
    const std::string f = o.format.empty() ? fallback : o.format;
    if (f != "json" && f != "csv" && f != "md")
        throw UsageError("--format must be json, csv or md");
    return f;
}

std::vector<double> parse_sweep(const std::string& s)
{
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
        throw UsageError("--sweep-k expects LO:HI:STEP");
    if (!(step > 0.0) || !(lo <= hi))
        throw UsageError("--sweep-k needs LO <= HI and STEP > 0");
    std::vector<double> ks;
    for (std::size_t i = 0;; ++i) {
        const double k = lo + static_cast<double>(i) * step;
        if (k > hi + 1e-12)
            break;
        ks.push_back(k);
    }
    return ks;
}

/// Runs fn(0..n-1) on a worker pool; results keep their index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn)
{
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            out[i] = fn(i);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return out;
}

Json report_to_json(const StabilityReport& r)
{
    Json j;
    j["family"] = std::string(family_name(r.family));
    j["L"] = number(r.L);
    j["k"] = number(r.k);
    j["omega"] = number(r.omega);
    j["A"] = number(r.A);
    j["theta"] = number(r.theta);
    j["grid_n"] = r.grid_n;
    j["I"] = number(r.ip.lone_one);
    j["inner_products"] = {{"lphi_phi", number(r.ip.lphi_phi)},
                           {"lphi_one", number(r.ip.lphi_one)},
                           {"lone_one", number(r.ip.lone_one)}};
    if (r.D) {
        const DMatrix& d = *r.D;
        j["D"] = {{"entries",
                   {{number(d.entries[0][0]), number(d.entries[0][1])},
                    {number(d.entries[1][0]), number(d.entries[1][1])}}},
                  {"det_raw", number(d.det_raw)},
                  {"det_prefactored", number(d.det_prefactored)},
                  {"det_schur", number(d.det_schur)},
                  {"eigenvalues", {number(d.eigenvalues[0]), number(d.eigenvalues[1])}},
                  {"tabulated_convention", "det_schur"}};
    } else {
        j["D"] = nullptr;
    }
    j["det_closed_form"] = r.det_closed_form ? number(*r.det_closed_form) : Json(nullptr);
    j["index"] = {{"nL", r.index.nL},
                  {"nI", r.index.nI},
                  {"nD", r.index.nD},
                  {"nD_prefactored", r.index.nD_prefactored},
                  {"K_ham", r.index.K_ham}};
    j["verdict"] = std::string(verdict_name(r.index.verdict));
    j["note"] = r.index.note;
    if (r.spectral) {
        const SpectralSummary& s = *r.spectral;
        Json eigs = Json::array();
        for (double e : s.smallest)
            eigs.push_back(number(e));
        j["spectral"] = {{"n_neg", s.n_neg},
                         {"n_zero", s.n_zero},
                         {"modes", s.modes},
                         {"kernel_correlation", number(s.kernel_correlation)},
                         {"smallest_eigenvalues", eigs}};
    } else {
        j["spectral"] = nullptr;
    }
    Json cc = Json::object();
    for (const auto& [name, v] : r.crosschecks)
        cc[name] = number(v);
    j["crosschecks"] = cc;
    return j;
}

Json report_row(const StabilityReport& r)
{
    Json row;
    row["family"] = std::string(family_name(r.family));
    row["L"] = number(r.L);
    row["k"] = number(r.k);
    row["omega"] = number(r.omega);
    row["A"] = number(r.A);
    row["theta"] = number(r.theta);
    row["I"] = number(r.ip.lone_one);
    row["lphi_phi"] = number(r.ip.lphi_phi);
    row["lphi_one"] = number(r.ip.lphi_one);
    row["det_schur"] = r.D ? number(r.D->det_schur) : Json(nullptr);
    row["det_raw"] = r.D ? number(r.D->det_raw) : Json(nullptr);
    row["det_prefactored"] = r.D ? number(r.D->det_prefactored) : Json(nullptr);
    row["det_closed_form"] = r.det_closed_form ? number(*r.det_closed_form) : Json(nullptr);
    row["nL"] = r.index.nL;
    row["nI"] = r.index.nI;
    row["nD"] = r.index.nD;
    row["K_ham"] = r.index.K_ham;
    row["verdict"] = std::string(verdict_name(r.index.verdict));
    return row;
}

int verdict_exit(Verdict v)
{
    switch (v) {
    case Verdict::Stable:
        return kExitStable;
    case Verdict::Unstable:
        return kExitUnstable;
    case Verdict::Indeterminate:
        return kExitIndeterminate;
    }
    return kExitIndeterminate;
}

void emit(std::ostream& os, const std::string& format, const std::vector<std::string>& header, const Json& rows,
          const Json& document)
{
    if (format == "json")
        os << dump(document);
    else if (format == "csv")
        write_csv(os, header, canonical(rows));
    else
        write_markdown(os, header, canonical(rows));
}

int cmd_analyze(const Options& o, std::ostream& os)
{
    const WaveFamily family = require_family(o.family);
    const double L = require_single_L(o);
    const std::string format = output_format(o, "json");
    const double k = resolve_k(o, family, L);
    AnalyzeOptions opt;
    opt.grid_n = grid_size(o);
    opt.fourier_modes = o.modes;
    const StabilityReport r = analyze(family, L, k, opt);
    emit(os, format, kReportColumns, Json::array({report_row(r)}), report_to_json(r));
    return verdict_exit(r.index.verdict);
}

int cmd_table(const Options& o, std::ostream& os, std::ostream& err)
{
    const std::string format = output_format(o, "csv");
    struct Point {
        WaveFamily family;
        double L;
        double k;
    };
    std::vector<Point> points;
    if (!o.preset.empty()) {
        if (!o.k_list.empty() || !o.sweep.empty())
            throw UsageError("--preset cannot be combined with --k or --sweep-k");
        const std::vector<double> periods = o.L.empty() ? kTablePeriods : o.L;
        if (o.preset == "dnoidal-tables") {
            for (double L : periods)
                for (double k : kDnoidalRows)
                    points.push_back({WaveFamily::CkdvDnoidal, L, k});
        } else if (o.preset == "cnoidal-tables") {
            for (double L : periods)
                for (double k : cnoidal_rows(L))
                    points.push_back({WaveFamily::CkdvCnoidal, L, k});
        } else {
            throw UsageError("unknown preset '" + o.preset + "' (expected dnoidal-tables or cnoidal-tables)");
        }
        if (!o.family.empty() && require_family(o.family) != points.front().family)
            throw UsageError("--family conflicts with the preset");
    } else {
        const WaveFamily family = require_family(o.family);
        if (o.L.empty())
            throw UsageError("--L is required without a preset");
        std::vector<double> ks = o.k_list;
        if (o.k)
            ks.push_back(*o.k);
        if (!o.sweep.empty()) {
            const auto swept = parse_sweep(o.sweep);
            ks.insert(ks.end(), swept.begin(), swept.end());
        }
        if (ks.empty())
            throw UsageError("table needs --preset, --k or --sweep-k");
        for (double L : o.L) {
            if (!(L > 0.0))
                throw UsageError("--L must be positive");
            for (double k : ks)
                points.push_back({family, L, Modulus(k).k()});
        }
    }

    AnalyzeOptions opt;
    opt.grid_n = grid_size(o);
    opt.fourier_modes = o.modes;
    struct Row {
        Json row;
        std::string error;
    };
    const auto rows = parallel_map<Row>(points.size(), [&](std::size_t i) {
        const Point& p = points[i];
        try {
            return Row{report_row(analyze(p.family, p.L, p.k, opt)), {}};
        } catch (const std::exception& e) {
            Json row = {{"family", std::string(family_name(p.family))},
                        {"L", number(p.L)},
                        {"k", number(p.k)},
                        {"verdict", "ERROR"}};
            return Row{row, e.what()};
        }
    });
    Json table = Json::array();
    int code = 0;
    for (const auto& r : rows) {
        table.push_back(r.row);
        if (!r.error.empty()) {
            err << "wavespec: row k=" << format_number(r.row["k"].get<double>()) << ": " << r.error << '\n';
            code = kExitInternal;
        }
    }
    emit(os, format, kReportColumns, table, table);
    return code;
}

int cmd_threshold(const Options& o, std::ostream& os)
{
    const WaveFamily family = require_family(o.family);
    const double L = require_single_L(o);
    const std::string format = output_format(o, "json");
    ThresholdOptions opt;
    opt.grid_n = grid_size(o);
    const ThresholdResult t = find_k0(family, L, opt);
    Json j = {{"family", std::string(family_name(family))},
              {"L", number(t.L)},
              {"k0", number(t.k0)},
              {"omega_at_k0", number(t.omega_at_k0)},
              {"k_lo", number(t.k_lo)},
              {"k_hi", number(t.k_hi)},
              {"iterations", t.iterations},
              {"sign_changes", t.sign_changes}};
    emit(os, format, {"family", "L", "k0", "omega_at_k0", "k_lo", "k_hi", "iterations", "sign_changes"},
         Json::array({j}), j);
    return 0;
}

int cmd_profile(const Options& o, std::ostream& os)
{
    const WaveFamily family = require_family(o.family);
    const double L = require_single_L(o);
    const std::string format = output_format(o, "csv");
    if (!o.sweep.empty()) {
        if (o.k || o.omega)
            throw UsageError("--sweep-k replaces --k/--omega");
        const auto ks = parse_sweep(o.sweep);
        for (double k : ks)
            static_cast<void>(Modulus(k));
        const std::size_t n = grid_size(o);
        const auto rows = parallel_map<Json>(ks.size(), [&](std::size_t i) {
            return Json{{"k", number(ks[i])},
                        {"omega", number(omega_of_k(family, L, ks[i]))},
                        {"I", number(lone_one(family, L, ks[i], n))}};
        });
        const Json table(rows);
        emit(os, format, {"k", "omega", "I"}, table, table);
        return 0;
    }
    const double k = resolve_k(o, family, L);
    if (o.samples < 1)
        throw UsageError("--samples must be at least 1");
    const WaveProfile p = make_profile(family, L, k);
    Json rows = Json::array();
    for (std::size_t i = 0; i <= o.samples; ++i) {
        const double x = L * static_cast<double>(i) / static_cast<double>(o.samples);
        const PhiValues v = eval_phi(p, x);
        rows.push_back({{"x", number(x)},
                        {"phi", number(v.phi)},
                        {"dphi", number(v.dphi)},
                        {"d2phi", number(v.d2phi)},
                        {"q", number(p.omega - nonlinearity_prime(family, v.phi))}});
    }
    emit(os, format, {"x", "phi", "dphi", "d2phi", "q"}, rows, rows);
    return 0;
}

int cmd_spectrum(const Options& o, std::ostream& os)
{
    const std::string format = output_format(o, "json");
    Json j;
    std::vector<double> eigs;
    if (o.constant_potential) {
        const double L = require_single_L(o);
        const FourierHillMatrix m = assemble_hill([](double) { return 0.0; }, *o.constant_potential, L, o.modes);
        eigs = eigen_symmetric(m.M, false).values;
        const InertialIndex idx = inertial_index(eigs, 1.0);
        j["n_neg"] = idx.n_neg;
        j["n_zero"] = idx.n_zero;
        j["modes"] = m.N;
    } else {
        const WaveFamily family = require_family(o.family);
        const double L = require_single_L(o);
        const double k = resolve_k(o, family, L);
        const WaveProfile p = make_profile(family, L, k);
        const SpectralResult s = spectral_check(p, o.modes);
        eigs = s.eigenvalues;
        const HillOperatorSpec spec(p, default_grid_size(p));
        const double theta = compute_ybar(spec).theta;
        j["family"] = std::string(family_name(family));
        j["k"] = number(k);
        j["n_neg"] = s.index.n_neg;
        j["n_zero"] = s.index.n_zero;
        j["z_tol"] = number(s.index.z_tol);
        j["modes"] = s.matrix.N;
        j["theta"] = number(theta);
        j["n_expected"] = expected_negative_count(family);
        j["kernel_correlation"] = number(s.kernel_correlation);
        j["lone_one_fourier"] = number(s.lone_one);
        try {
            check_theta_correspondence(s.index, theta);
            j["theta_consistent"] = true;
        } catch (const ConsistencyError&) {
            j["theta_consistent"] = false;
        }
    }
    Json list = Json::array();
    Json rows = Json::array();
    for (std::size_t i = 0; i < std::min(o.count, eigs.size()); ++i) {
        list.push_back(number(eigs[i]));
        rows.push_back({{"index", i}, {"eigenvalue", number(eigs[i])}});
    }
    j["eigenvalues"] = list;
    emit(os, format, {"index", "eigenvalue"}, rows, j);
    return 0;
}

void add_point_options(CLI::App* sub, Options& o)
{
    sub->add_option("--family", o.family, "ckdv-dnoidal | ckdv-cnoidal | gardner");
    sub->add_option("--L", o.L, "period length");
    sub->add_option("--grid-n", o.grid_n, "RK intervals (default max(2048, 64 ceil(4K)), or WAVESPEC_GRID_N)");
    sub->add_option("--out", o.out, "write output to PATH instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectral stability of periodic waves of the critical KdV and Gardner equations", "wavespec"};
    app.require_subcommand(1);
    Options o;

    auto* analyze_cmd = app.add_subcommand("analyze", "stability report for one wave");
    add_point_options(analyze_cmd, o);
    analyze_cmd->add_option("--k", o.k, "elliptic modulus in (0,1)");
    analyze_cmd->add_option("--omega", o.omega, "wave speed (inverted to k)");
    analyze_cmd->add_option("--format", o.format, "json | csv | md");
    analyze_cmd->add_option("--modes", o.modes, "Fourier modes for the spectral check");

    auto* table_cmd = app.add_subcommand("table", "index data over a list of moduli");
    add_point_options(table_cmd, o);
    table_cmd->add_option("--preset", o.preset, "dnoidal-tables | cnoidal-tables");
    table_cmd->add_option("--k", o.k_list, "moduli")->delimiter(',');
    table_cmd->add_option("--sweep-k", o.sweep, "LO:HI:STEP");
    table_cmd->add_option("--format", o.format, "json | csv | md");
    table_cmd->add_option("--modes", o.modes, "Fourier modes for the spectral check");

    auto* threshold_cmd = app.add_subcommand("threshold", "locate k0 with I(k0) = 0");
    add_point_options(threshold_cmd, o);
    threshold_cmd->add_option("--format", o.format, "json | csv | md");

    auto* profile_cmd = app.add_subcommand("profile", "sample phi, phi', phi'', q over one period");
    add_point_options(profile_cmd, o);
    profile_cmd->add_option("--k", o.k, "elliptic modulus in (0,1)");
    profile_cmd->add_option("--omega", o.omega, "wave speed (inverted to k)");
    profile_cmd->add_option("--samples", o.samples, "intervals; samples+1 rows");
    profile_cmd->add_option("--sweep-k", o.sweep, "LO:HI:STEP, emits k, omega, I");
    profile_cmd->add_option("--format", o.format, "json | csv | md");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "smallest eigenvalues of the Fourier-Hill matrix");
    add_point_options(spectrum_cmd, o);
    spectrum_cmd->add_option("--k", o.k, "elliptic modulus in (0,1)");
    spectrum_cmd->add_option("--omega", o.omega, "wave speed (inverted to k)");
    spectrum_cmd->add_option("--count", o.count, "eigenvalues to print");
    spectrum_cmd->add_option("--modes", o.modes, "Fourier modes N (matrix 2N+1)");
    spectrum_cmd->add_option("--constant-potential", o.constant_potential,
                             "use V = 0 with this constant instead of a wave");
    spectrum_cmd->add_option("--format", o.format, "json | csv | md");

    std::vector<std::string> argv_store = {"wavespec"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "wavespec: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream buffer;
    buffer.imbue(std::locale::classic());
    int code = 0;
    try {
        if (analyze_cmd->parsed())
            code = cmd_analyze(o, buffer);
        else if (table_cmd->parsed())
            code = cmd_table(o, buffer, err);
        else if (threshold_cmd->parsed())
            code = cmd_threshold(o, buffer);
        else if (profile_cmd->parsed())
            code = cmd_profile(o, buffer);
        else
            code = cmd_spectrum(o, buffer);
    } catch (const UsageError& e) {
        err << "wavespec: " << e.what() << '\n';
        return kExitUsage;
    } catch (const RangeError& e) {
        err << "wavespec: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "wavespec: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoThreshold& e) {
        err << "wavespec: no threshold: " << e.what() << '\n';
        return kExitNoThreshold;
    } catch (const std::exception& e) {
        err << "wavespec: error: " << e.what() << '\n';
        return kExitInternal;
    }

    if (o.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << "wavespec: cannot open " << o.out << " for writing\n";
            return kExitInternal;
        }
        file << buffer.str();
    }
    return code;
}

} // namespace wavespec::cli
