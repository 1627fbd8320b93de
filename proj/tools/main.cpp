#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "trimat/errors.hpp"
#include "trimat/grouplab.hpp"
#include "trimat/textio.hpp"

namespace {

using namespace trimat;

// Command-line misuse distinct from library domain errors; exits with 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open `" + path + "`");
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw UsageError("cannot read `" + path + "`");
    return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open `" + out_path + "` for writing");
    out << text;
}

// Positional arguments are input files followed by object names; anything
// that exists on disk is a file, the rest are names.
struct LoadedArgs {
    Document doc;
    std::vector<std::string> names;
};

LoadedArgs load_args(const std::vector<std::string>& args,
                     std::size_t expected_names) {
    std::vector<std::string> files;
    std::vector<std::string> names;
    for (const std::string& a : args) {
        if (std::filesystem::exists(a) && !std::filesystem::is_directory(a))
            files.push_back(a);
        else
            names.push_back(a);
    }
    if (files.empty())
        throw UsageError("expected at least one input file (none of the "
                         "arguments name an existing file)");
    if (names.size() != expected_names)
        throw UsageError("expected " + std::to_string(expected_names) +
                         " object name(s), got " +
                         std::to_string(names.size()));

    std::optional<Document> merged;
    for (const std::string& path : files) {
        Document doc = parse_document(read_file(path));
        if (!merged) {
            merged.emplace(std::move(doc));
            continue;
        }
        if (!(doc.field() == merged->field()))
            throw FieldMismatch("`" + path + "` is over " + doc.field().str() +
                                ", earlier input is over " +
                                merged->field().str());
        for (const auto& [name, obj] : doc.objects()) merged->add(name, obj);
    }
    return LoadedArgs{std::move(*merged), std::move(names)};
}

const TensorObject& find_object(const Document& doc, const std::string& name) {
    const TensorObject* obj = doc.find(name);
    if (obj == nullptr)
        throw UsageError("object `" + name + "` not found in the input");
    return *obj;
}

const Matrix3& as_matrix(const TensorObject& obj, const std::string& name) {
    if (const Matrix3* m = std::get_if<Matrix3>(&obj)) return *m;
    throw Error("object `" + name + "` is a multi-scalar, expected a matrix");
}

const MultiScalar& as_mscalar(const TensorObject& obj,
                              const std::string& name) {
    if (const MultiScalar* s = std::get_if<MultiScalar>(&obj)) return *s;
    throw Error("object `" + name + "` is a matrix, expected a multi-scalar");
}

void emit_result(const FieldSpec& field, const std::string& result_name,
                 TensorObject result, const std::string& out_path, bool json) {
    if (!is_valid_object_name(result_name))
        throw UsageError("`" + result_name + "` is not a valid object name");
    Document doc(field);
    doc.add(result_name, std::move(result));
    if (json)
        write_output(out_path, to_json(doc).dump(2) + "\n");
    else
        write_output(out_path, serialize(doc));
}

struct ComputeOptions {
    std::vector<std::string> args;
    std::string out_path;
    std::string result_name = "result";
    bool json = false;
};

int run_unary(const std::string& op, const ComputeOptions& opt) {
    LoadedArgs in = load_args(opt.args, 1);
    const Matrix3& a = as_matrix(find_object(in.doc, in.names[0]), in.names[0]);
    TensorObject result = [&]() -> TensorObject {
        if (op == "det") return det3(a);
        if (op == "adj") return adjugate3(a);
        return inverse3(a);
    }();
    emit_result(in.doc.field(), opt.result_name, std::move(result),
                opt.out_path, opt.json);
    return 0;
}

int run_binary(const std::string& op, const ComputeOptions& opt) {
    LoadedArgs in = load_args(opt.args, 2);
    TensorObject result = [&]() -> TensorObject {
        if (op == "smul") {
            const MultiScalar& s =
                as_mscalar(find_object(in.doc, in.names[0]), in.names[0]);
            const Matrix3& a =
                as_matrix(find_object(in.doc, in.names[1]), in.names[1]);
            return scale(s, a);
        }
        const Matrix3& a =
            as_matrix(find_object(in.doc, in.names[0]), in.names[0]);
        const Matrix3& b =
            as_matrix(find_object(in.doc, in.names[1]), in.names[1]);
        return op == "mul" ? odot(a, b) : add(a, b);
    }();
    emit_result(in.doc.field(), opt.result_name, std::move(result),
                opt.out_path, opt.json);
    return 0;
}

struct VerifyOptions {
    std::string law = "all";
    std::string field = "rational";
    std::size_t n = 2;
    std::size_t p = 2;
    std::uint64_t samples = 200;
    std::uint64_t seed = 1;
    bool json = false;
    bool elapsed = false;
};

int run_verify(const VerifyOptions& opt) {
    FieldSpec spec = parse_field_spec(opt.field);
    std::vector<std::string> laws;
    if (opt.law == "all")
        laws = {"add-group", "semigroup", "closure", "gl-group"};
    else
        laws = {opt.law};

    int rc = 0;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    bool first = true;
    for (const std::string& law : laws) {
        VerificationReport rep;
        if (law == "add-group")
            rep = verify_abelian_group_add(opt.n, opt.p, spec, opt.samples,
                                           opt.seed);
        else if (law == "semigroup")
            rep = verify_semigroup_odot(opt.n, opt.p, spec, opt.samples,
                                        opt.seed);
        else if (law == "closure")
            rep = verify_gl_closure(opt.n, opt.p, spec, opt.samples, opt.seed);
        else if (law == "gl-group")
            rep = verify_group_gl(opt.n, opt.p, spec, opt.samples, opt.seed);
        else
            throw UsageError("unknown law `" + law +
                             "` (expected add-group, semigroup, closure, "
                             "gl-group, or all)");

        std::cerr << law << ": " << std::fixed << std::setprecision(3)
                  << rep.elapsed_seconds << "s\n";
        if (opt.json) {
            arr.push_back(rep.to_json(opt.elapsed));
        } else {
            if (!first) std::cout << '\n';
            std::cout << rep.text(opt.elapsed);
        }
        first = false;
        if (!rep.passed()) rc = 1;
    }
    if (opt.json) std::cout << arr.dump(2) << '\n';
    return rc;
}

std::uint64_t default_seed() {
    const char* s = std::getenv("TRIMAT_SEED");
    if (s == nullptr || *s == '\0') return 1;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != std::string(s).size())
            throw UsageError("TRIMAT_SEED is not an integer");
        return v;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("TRIMAT_SEED is not an integer");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"exact layered 3D matrix calculator"};
    app.require_subcommand(1);

    ComputeOptions det_opt, adj_opt, inv_opt, mul_opt, add_opt, smul_opt;
    auto add_compute = [&app](const char* name, const char* help,
                              ComputeOptions& opt, const char* names_help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("args", opt.args, names_help)->required()->expected(-1);
        cmd->add_option("-o,--output", opt.out_path,
                        "write the result document to this file");
        cmd->add_option("--name", opt.result_name,
                        "name of the result object (default `result`)");
        cmd->add_flag("--json", opt.json, "emit the JSON mirror");
        return cmd;
    };

    add_compute("det", "multi-determinant of a matrix", det_opt,
                "FILE... NAME");
    add_compute("adj", "adjugate of a matrix", adj_opt, "FILE... NAME");
    add_compute("inv", "inverse of a matrix", inv_opt, "FILE... NAME");
    add_compute("mul", "layer-wise product of two matrices", mul_opt,
                "FILE... A B");
    add_compute("add", "sum of two matrices", add_opt, "FILE... A B");
    add_compute("smul", "multi-scalar times matrix", smul_opt,
                "FILE... S A");

    VerifyOptions verify_opt;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "check algebraic laws on random samples");
    verify_cmd->add_option("--law", verify_opt.law,
                           "add-group, semigroup, closure, gl-group, or all");
    verify_cmd->add_option("--field", verify_opt.field,
                           "field spec, e.g. rational, gf7, float:1e-9");
    verify_cmd->add_option("-n", verify_opt.n, "layer size");
    verify_cmd->add_option("-p", verify_opt.p, "depth");
    verify_cmd->add_option("--samples", verify_opt.samples,
                           "number of random samples per law");
    CLI::Option* seed_opt = verify_cmd->add_option(
        "--seed", verify_opt.seed, "RNG seed (default: TRIMAT_SEED or 1)");
    verify_cmd->add_flag("--json", verify_opt.json, "emit JSON reports");
    verify_cmd->add_flag("--elapsed", verify_opt.elapsed,
                         "include elapsed time in the report body");

    std::size_t census_n = 0, census_p = 0;
    std::uint32_t census_q = 0;
    bool census_json = false;
    CLI::App* census_cmd = app.add_subcommand(
        "census", "exhaustively count GL(n,n,p) over a small prime field");
    census_cmd->add_option("--q", census_q, "prime modulus")->required();
    census_cmd->add_option("-n", census_n, "layer size")->required();
    census_cmd->add_option("-p", census_p, "depth")->required();
    census_cmd->add_flag("--json", census_json, "emit a JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!seed_opt->count()) verify_opt.seed = default_seed();

        if (app.got_subcommand("det")) return run_unary("det", det_opt);
        if (app.got_subcommand("adj")) return run_unary("adj", adj_opt);
        if (app.got_subcommand("inv")) return run_unary("inv", inv_opt);
        if (app.got_subcommand("mul")) return run_binary("mul", mul_opt);
        if (app.got_subcommand("add")) return run_binary("add", add_opt);
        if (app.got_subcommand("smul")) return run_binary("smul", smul_opt);
        if (app.got_subcommand("verify")) return run_verify(verify_opt);
        if (app.got_subcommand("census")) {
            GlCensus census = census_gl(census_n, census_p, census_q);
            if (census_json)
                std::cout << census.to_json().dump(2) << '\n';
            else
                std::cout << census.text() << '\n';
            return 0;
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const FieldLiteralError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidFieldSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
