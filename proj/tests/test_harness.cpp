#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zk/config.hpp"
#include "zk/csv.hpp"
#include "zk/errors.hpp"
#include "zk/experiment.hpp"
#include "zk/field.hpp"
#include "zk/snapshot.hpp"

using namespace zk;
namespace fs = std::filesystem;

namespace {

// Runs f, which must throw E, and returns the exception message for exact checks.
template <class E, class F>
std::string message_of(F&& f) {
    try {
        f();
    } catch (const E& e) {
        return e.what();
    }
    return "<no exception>";
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(bool(out));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / "zk_harness_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void append_raw(std::string& s, uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    s.append(buf, 8);
}

void append_raw(std::string& s, double v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    s.append(buf, 8);
}

} // namespace

TEST_CASE("config parsing: comments, dotted keys, trimming, duplicates") {
    Config c = Config::from_string(
        "# leading comment\n"
        "grid.L = 6.5   # trailing comment\n"
        "  run.T=2\n"
        "\n"
        "name =  gauss packet \n"
        "empty =\n"
        "dup = 1\n"
        "dup = 2\n");
    CHECK(c.has("grid.L"));
    CHECK(c.get_double("grid.L", 0.0) == 6.5);
    CHECK(c.get_double("run.T", 0.0) == 2.0);
    CHECK(c.get_string("name", "") == "gauss packet");
    CHECK(c.get_string("empty", "fallback") == "");
    CHECK(c.get_string("dup", "") == "2");  // later assignment wins
    CHECK(c.get_string("absent", "fallback") == "fallback");
    CHECK(!c.has("absent"));

    // keys() come back sorted (map order).
    std::vector<std::string> ks = c.keys();
    CHECK(ks == std::vector<std::string>{"dup", "empty", "grid.L", "name", "run.T"});

    // set() overrides.
    c.set("grid.L", "3.0");
    CHECK(c.get_double("grid.L", 0.0) == 3.0);
}

TEST_CASE("config parsing rejects malformed lines with the line number") {
    CHECK(message_of<ConfigError>([] {
              Config::from_string("a = 1\n\njust words\n");
          }) == "config line 3: expected key = value");
    CHECK(message_of<ConfigError>([] {
              Config::from_string("a = 1\n = 5\n");
          }) == "config line 2: empty key");
    // A pure-comment or blank line is not an error.
    CHECK_NOTHROW(Config::from_string("# only\n\n   \n"));
    CHECK(message_of<ConfigError>([] {
              Config::from_file("/nonexistent/zk.cfg");
          }) == "cannot open config file: /nonexistent/zk.cfg");
}

TEST_CASE("typed getters: conversions and error reporting") {
    Config c = Config::from_string(
        "x = 2.5\n"
        "n = 40\n"
        "frac = 1.5\n"
        "junk = 12q\n"
        "yes1 = yes\n"
        "yes2 = 1\n"
        "yes3 = true\n"
        "no1 = no\n"
        "no2 = 0\n"
        "no3 = false\n"
        "maybe = sometimes\n");
    CHECK(c.get_double("x", 0.0) == 2.5);
    CHECK(c.require_double("x") == 2.5);
    CHECK(c.get_int("n", 0) == 40);
    CHECK(c.get_int("absent", -3) == -3);
    CHECK(c.get_double("absent", 9.5) == 9.5);
    CHECK(c.require_string("n") == "40");

    CHECK(c.get_bool("yes1", false));
    CHECK(c.get_bool("yes2", false));
    CHECK(c.get_bool("yes3", false));
    CHECK(!c.get_bool("no1", true));
    CHECK(!c.get_bool("no2", true));
    CHECK(!c.get_bool("no3", true));
    CHECK(c.get_bool("absent", true));

    CHECK(message_of<ConfigError>([&] { c.require_double("absent"); }) ==
          "missing required config key: absent");
    CHECK(message_of<ConfigError>([&] { c.require_string("absent"); }) ==
          "missing required config key: absent");
    CHECK(message_of<ConfigError>([&] { c.get_double("junk", 0.0); }) ==
          "config key junk: cannot parse '12q' as number");
    CHECK(message_of<ConfigError>([&] { c.get_int("frac", 0); }) ==
          "config key frac: expected an integer");
    CHECK(message_of<ConfigError>([&] { c.get_bool("maybe", false); }) ==
          "config key maybe: expected a boolean");
}

TEST_CASE("config hash: canonical, order independent, value sensitive") {
    Config a = Config::from_string("b = 2\na = 1\n");
    Config b = Config::from_string("a = 1\nb = 2\n");
    CHECK(a.hash_hex() == b.hash_hex());
    CHECK(a.hash_hex().size() == 16);
    CHECK(a.hash_hex() == fnv1a_hex("a=1\nb=2\n"));  // canonical blob layout

    Config c = Config::from_string("a = 1\nb = 3\n");
    CHECK(c.hash_hex() != a.hash_hex());

    // Known FNV-1a vectors pin the hash function itself.
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    // Incremental form matches one-shot hashing.
    uint64_t h1 = fnv1a("ab", 2);
    uint64_t h2 = fnv1a("b", 1, fnv1a("a", 1));
    CHECK(h1 == h2);
}

TEST_CASE("format_double is %.17g and round-trips exactly") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-0.5) == "-0.5");
    for (double v : {1.0 / 3.0, 6.02e23, -1e-300, 3.141592653589793, 65536.0,
                     0.59460355750136029}) {
        double back = std::stod(format_double(v));
        CHECK(back == v);
    }
}

TEST_CASE("csv writer and reader round trip") {
    CsvWriter w({"t", "value", "label"});
    w.add_row_mixed({"0", format_double(0.125), "start"});
    w.add_row_mixed({"1", format_double(-2.0), "end"});
    CHECK(w.rows() == 2);
    CHECK_THROWS_AS(w.add_row({1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(w.add_row_mixed({"only", "two"}), DimensionError);

    CHECK(w.to_string() == "t,value,label\n0,0.125,start\n1,-2,end\n");

    fs::path dir = fresh_dir("csv");
    std::string path = (dir / "table.csv").string();
    w.write_file(path);
    CsvTable t = read_csv(path);
    CHECK(t.columns == std::vector<std::string>{"t", "value", "label"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"0", "0.125", "start"});
    CHECK(t.rows[1] == std::vector<std::string>{"1", "-2", "end"});
    CHECK(t.column_index("value") == 1);
    CHECK(t.column_index("nope") == -1);

    // Trailing empty cell survives.
    write_bytes(path, "a,b\n1,\n");
    CsvTable t2 = read_csv(path);
    REQUIRE(t2.rows.size() == 1);
    CHECK(t2.rows[0] == std::vector<std::string>{"1", ""});

    CHECK_THROWS_AS(read_csv((dir / "missing.csv").string()), IoError);

    // Numeric rows print with full precision and parse back bit-exactly.
    CsvWriter nw({"x"});
    nw.add_row({1.0 / 3.0});
    write_bytes(path, nw.to_string());
    CsvTable t3 = read_csv(path);
    CHECK(std::stod(t3.rows[0][0]) == 1.0 / 3.0);
}

TEST_CASE("zk1 snapshots round trip bit-exactly") {
    Grid g(4.0, 8);
    SpectralField f1(g), f2(g);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        f1.set_coeff(j, cplx(0.1 * j, -0.25 * j));
        f2.set_coeff(j, cplx(j * j * 1e-3, 1.0 / (j + 9)));
    }

    fs::path dir = fresh_dir("zk1");
    std::string path = (dir / "state.zk1").string();
    zk1::write_file(path, g, 0.75, {&f1, &f2});

    zk1::Record rec = zk1::read_file(path, 2);
    CHECK(rec.grid.L == 4.0);
    CHECK(rec.grid.M == 8);
    CHECK(rec.t == 0.75);
    REQUIRE(rec.fields.size() == 2);
    for (int j = g.j_min(); j <= g.j_max(); ++j) {
        CHECK(rec.fields[0].coeff(j) == f1.coeff(j));
        CHECK(rec.fields[1].coeff(j) == f2.coeff(j));
    }

    // Reading more fields than were written runs off the end.
    CHECK(message_of<IoError>([&] { zk1::read_file(path, 3); }) ==
          "snapshot: truncated payload");

    // Bad magic.
    std::string bytes = read_bytes(path);
    std::string corrupt = bytes;
    corrupt[0] = 'X';
    write_bytes(path, corrupt);
    CHECK(message_of<IoError>([&] { zk1::read_file(path, 2); }) == "snapshot: bad magic");

    // Truncated inside the payload.
    write_bytes(path, bytes.substr(0, 28 + 24));
    CHECK(message_of<IoError>([&] { zk1::read_file(path, 2); }) ==
          "snapshot: truncated payload");

    // Truncated header.
    write_bytes(path, bytes.substr(0, 10));
    CHECK(message_of<IoError>([&] { zk1::read_file(path, 1); }) ==
          "snapshot: truncated header");

    // Implausible mode count is rejected before any allocation.
    std::string odd;
    odd.append("ZK1", 4);  // includes the trailing NUL
    append_raw(odd, static_cast<uint64_t>(5));
    append_raw(odd, 1.0);
    append_raw(odd, 0.0);
    write_bytes(path, odd);
    CHECK(message_of<IoError>([&] { zk1::read_file(path, 0); }) ==
          "snapshot: implausible mode count");

    CHECK_THROWS_AS(zk1::read_file((dir / "missing.zk1").string(), 1), IoError);

    // Mixed-grid field lists are rejected at write time.
    Grid g2(4.0, 16);
    SpectralField other(g2);
    CHECK_THROWS_AS(zk1::write_file(path, g, 0.0, {&f1, &other}), DimensionError);
}

TEST_CASE("emit_plotdata renders selected columns with optional log10") {
    fs::path dir = fresh_dir("plot");
    std::string csv = (dir / "in.csv").string();
    std::string out = (dir / "out.dat").string();

    CsvWriter w({"a", "b"});
    w.add_row({1.0, 10.0});
    w.add_row({2.0, 0.0});
    w.write_file(csv);

    emit_plotdata(csv, out);
    CHECK(read_bytes(out) == "# a b\n1 10\n2 0\n");

    emit_plotdata(csv, out, {"b"}, true);
    CHECK(read_bytes(out) == "# b\n1\nnan\n");  // log10(10) = 1; nonpositive -> nan

    emit_plotdata(csv, out, {"b", "a"});
    CHECK(read_bytes(out) == "# b a\n10 1\n0 2\n");

    CHECK(message_of<ConfigError>([&] { emit_plotdata(csv, out, {"c"}); }) ==
          "no such column in " + csv + ": c");

    CsvWriter m({"a"});
    m.add_row_mixed({"word"});
    m.write_file(csv);
    CHECK(message_of<ConfigError>([&] { emit_plotdata(csv, out); }) ==
          "non-numeric cell in " + csv);
}

TEST_CASE("experiment kinds are registered and unknown kinds are rejected") {
    const std::vector<std::string>& kinds = experiment_kinds();
    CHECK(kinds == std::vector<std::string>{"conservation", "reduction_roundtrip",
                                            "split_scaling", "bilinear_probe",
                                            "kernel_supremum_sweep", "duhamel_vs_splitting",
                                            "interval_pipeline", "global_growth"});

    ExperimentSpec spec;
    spec.kind = "bogus";
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "unknown experiment kind: bogus");
}

TEST_CASE("experiment config validation: unknown, missing, malformed keys") {
    fs::path dir = fresh_dir("validate");

    ExperimentSpec spec;
    spec.out_dir = (dir / "x").string();

    spec.kind = "conservation";
    spec.config = Config::from_string("grid.M = 16\nbogus_key = 1\n");
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "unknown config key for conservation: bogus_key");

    spec.kind = "global_growth";
    spec.config = Config::from_string("grid.M = 16\n");
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "missing required config key for global_growth: s");

    spec.kind = "conservation";
    spec.config = Config::from_string("grid.M = 16\nprofile = bumpy\n");
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "profile must be smooth or rough, got: bumpy");

    spec.kind = "kernel_supremum_sweep";
    spec.config = Config::from_string("regime = case_zz\n");
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "unknown kernel regime: case_zz");

    spec.kind = "bilinear_probe";
    spec.config = Config::from_string("mode = chaotic\n");
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "bilinear_probe: mode must be ensemble or adversarial");

    spec.kind = "split_scaling";
    spec.config = Config::from_string("grid.M = 64\ncutoffs = 2,oops\n");
    CHECK(message_of<ConfigError>([&] { run_experiment(spec); }) ==
          "unparsable list entry for cutoffs: oops");

    // Nothing above reached the artifact stage.
    CHECK(!fs::exists(dir / "x"));
}

TEST_CASE("experiments are byte-deterministic and the manifest checksums are real") {
    fs::path root = fresh_dir("rerun");

    ExperimentSpec spec;
    spec.kind = "reduction_roundtrip";
    spec.config = Config::from_string(
        "grid.L = 6.283185307179586\n"
        "grid.M = 32\n"
        "count = 3\n"
        "T = 0.0625\n"
        "dt = 0.015625\n"
        "s = 0.95\n"
        "amplitude = 0.5\n");
    spec.seed = 7;

    spec.out_dir = (root / "a").string();
    ExperimentResult ra = run_experiment(spec);
    spec.out_dir = (root / "b").string();
    ExperimentResult rb = run_experiment(spec);

    REQUIRE(ra.artifacts == rb.artifacts);
    CHECK(ra.artifacts == std::vector<std::string>{"roundtrip.csv", "summary.txt",
                                                   "manifest.txt"});
    for (const auto& name : ra.artifacts)
        CHECK(read_bytes((root / "a" / name).string()) ==
              read_bytes((root / "b" / name).string()));

    CHECK(ra.summary == read_bytes((root / "a" / "summary.txt").string()));

    // Manifest lines carry the true size and FNV-1a of each artifact.
    std::istringstream manifest(read_bytes((root / "a" / "manifest.txt").string()));
    std::string line;
    int artifact_lines = 0;
    bool saw_kind = false, saw_seed = false, saw_hash = false;
    while (std::getline(manifest, line)) {
        if (line == "kind = reduction_roundtrip") saw_kind = true;
        if (line == "seed = 7") saw_seed = true;
        if (line == "config_hash = " + spec.config.hash_hex()) saw_hash = true;
        const std::string prefix = "artifact = ";
        if (line.rfind(prefix, 0) == 0) {
            ++artifact_lines;
            std::istringstream ls(line.substr(prefix.size()));
            std::string name, bytes_kv, hash_kv;
            ls >> name >> bytes_kv >> hash_kv;
            std::string body = read_bytes((root / "a" / name).string());
            CHECK(bytes_kv == "bytes=" + std::to_string(body.size()));
            CHECK(hash_kv == "fnv1a=" + fnv1a_hex(body));
        }
    }
    CHECK(saw_kind);
    CHECK(saw_seed);
    CHECK(saw_hash);
    CHECK(artifact_lines == 2);  // roundtrip.csv and summary.txt; manifest lists the others

    // A different seed changes the data artifacts.
    spec.seed = 8;
    spec.out_dir = (root / "c").string();
    run_experiment(spec);
    CHECK(read_bytes((root / "a" / "roundtrip.csv").string()) !=
          read_bytes((root / "c" / "roundtrip.csv").string()));
}
