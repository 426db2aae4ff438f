// hrpks: group-manager, signer and verifier workflows on the command line.
//
// Exit codes: 0 success / Accept, 1 Reject, 2 usage or I/O, 3 signer revoked,
// 4 invariant violation (including malformed input files).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hrpks.hpp"

namespace {

using namespace hrpks;

enum Exit : int { kOk = 0, kReject = 1, kUsage = 2, kRevoked = 3, kViolation = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::optional<std::string> seed;
  std::string params_path = "hrpks.params";
  std::string gm_key_path = "gm.key";
  std::string tree_path = "hrpks.tree";
  std::string rl_path = "hrpks.rl";
  bool verbose = false;

  Rng rng(const std::string& context) const {
    return seed ? Rng::seeded(*seed, context) : Rng::from_os();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

SystemParams load_params(const CliConfig& cfg) { return deserialize_params(read_file(cfg.params_path)); }

std::vector<Integer> parse_int_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  return out;
}

// ---- subcommands --------------------------------------------------------------

struct SetupArgs {
  std::string curve = "toy17";
  std::string p;
  std::string q;
  std::optional<unsigned> l_c;
  unsigned l_s = 64;
};

int run_setup(const CliConfig& cfg, const SetupArgs& a) {
  Rng rng = cfg.rng("setup");
  SetupResult res = setup(a.curve, parse_integer(a.p), parse_integer(a.q), a.l_c, a.l_s, rng);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  write_file(cfg.params_path, serialize_params(res.params));
  write_file(cfg.gm_key_path, serialize_keypair(res.gm));
  write_file(cfg.tree_path, serialize_tree(DeptTree{}));
  write_file(cfg.rl_path, serialize_rl(RevocationList{}));
  std::cout << "params " << cfg.params_path << " (r = " << res.params.r() << ", digest "
            << to_hex(params_digest(res.params)) << ")\n";
  return kOk;
}

struct DeptArgs {
  std::string parent = "/";
  std::string name;
  std::string coeffs;
};

int run_dept_add(const CliConfig& cfg, const DeptArgs& a) {
  SystemParams params = load_params(cfg);
  DeptTree tree = deserialize_tree(read_file(cfg.tree_path), params);
  const DeptNode* node = nullptr;
  if (!a.coeffs.empty()) {
    Hyperplane h{parse_int_list(a.coeffs)};
    for (auto& c : h.coeffs) c = mod(c, params.q);
    node = &add_department_with(params, tree, a.parent, a.name, std::move(h));
  } else {
    Rng rng = cfg.rng("dept:" + child_path(a.parent, a.name));
    node = &add_department(params, tree, a.parent, a.name, rng);
  }
  std::cout << node->path << "  " << node->constraints.back().to_string() << " (mod q)\n";
  write_file(cfg.tree_path, serialize_tree(tree));
  return kOk;
}

struct JoinArgs {
  std::string dept;
  std::string id;
  std::vector<std::string> fix;  // "index=value", 1-based coordinate index
  std::string out_key;
  std::string out_pub;
};

int run_join(const CliConfig& cfg, const JoinArgs& a) {
  SystemParams params = load_params(cfg);
  KeyPair gm = deserialize_keypair(read_file(cfg.gm_key_path), params);
  DeptTree tree = deserialize_tree(read_file(cfg.tree_path), params);
  std::map<std::size_t, Integer> fixed;
  for (const auto& f : a.fix) {
    auto eq = f.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--fix", "expected index=value");
    long idx = std::stol(f.substr(0, eq));
    if (idx < 1 || static_cast<std::size_t>(idx) > params.r()) throw CLI::ValidationError("--fix", "index out of range");
    fixed[static_cast<std::size_t>(idx - 1)] = parse_integer(f.substr(eq + 1));
  }
  Rng rng = cfg.rng("join:" + a.dept + ":" + a.id);
  KeyPair kp = join(params, gm, tree.at(a.dept), a.id, rng, fixed);
  std::string key_path = a.out_key.empty() ? a.id + ".key" : a.out_key;
  std::string pub_path = a.out_pub.empty() ? a.id + ".pub" : a.out_pub;
  write_file(key_path, serialize_keypair(kp));
  write_file(pub_path, serialize_cert(kp.pk));
  std::cout << a.id << " joined " << kp.pk.dept << ": PK = " << toy::show(kp.pk.point) << "\n";
  return kOk;
}

struct SignArgs {
  std::string key;
  std::string rl;
  std::string msg_file;
  std::string out;
};

int run_sign(const CliConfig& cfg, const SignArgs& a) {
  SystemParams params = load_params(cfg);
  KeyPair kp = deserialize_keypair(read_file(a.key), params);
  RevocationList rl = deserialize_rl(read_file(a.rl.empty() ? cfg.rl_path : a.rl), params);
  std::string message = read_file(a.msg_file);
  Rng rng = cfg.rng("sign:" + kp.pk.member_id + ":" + to_hex(sha256(message)));
  Signature sig = sign(params, kp.sk, kp.pk, rl, message, rng);
  write_file(a.out, serialize_signature(sig));
  return kOk;
}

struct VerifyArgs {
  std::string pub;
  std::string rl;
  std::string msg_file;
  std::string sig;
  bool json = false;
};

int run_verify(const CliConfig& cfg, const VerifyArgs& a) {
  SystemParams params = load_params(cfg);
  PublicKey pk = deserialize_cert(read_file(a.pub), params);
  RevocationList rl = deserialize_rl(read_file(a.rl.empty() ? cfg.rl_path : a.rl), params);
  std::string message = read_file(a.msg_file);
  VerifyResult result;
  if (!verify_cert(params, pk)) {
    result = VerifyResult::reject(RejectReason::kBadCert, "GM certificate does not verify");
  } else {
    result = verify(params, pk, rl, message, deserialize_signature(read_file(a.sig)));
  }
  if (a.json) {
    std::cout << Json{{"accepted", result.accepted}, {"reason", to_string(result.reason)}, {"detail", result.detail}}.dump()
              << "\n";
  } else if (result.accepted) {
    std::cout << "Accept\n";
  } else {
    std::cout << "Reject(" << to_string(result.reason) << ")" << (result.detail.empty() ? "" : ": " + result.detail)
              << "\n";
  }
  return result.accepted ? kOk : kReject;
}

struct RlArgs {
  std::string pub;
  std::string dept;
  std::string out;
};

int finish_rl(const CliConfig& cfg, const RlArgs& a, const RevocationList& before, const RevocationList& after) {
  write_file(a.out.empty() ? cfg.rl_path : a.out, serialize_rl(after));
  std::cout << "rl_version " << before.version << " -> " << after.version << " (" << after.members.size()
            << " members, " << after.groups.size() << " groups)\n";
  return kOk;
}

int run_revoke_member(const CliConfig& cfg, const RlArgs& a) {
  SystemParams params = load_params(cfg);
  RevocationList rl = deserialize_rl(read_file(cfg.rl_path), params);
  PublicKey pk = deserialize_cert(read_file(a.pub), params);
  return finish_rl(cfg, a, rl, revoke_member(rl, pk));
}

int run_revoke_group(const CliConfig& cfg, const RlArgs& a) {
  SystemParams params = load_params(cfg);
  RevocationList rl = deserialize_rl(read_file(cfg.rl_path), params);
  DeptTree tree = deserialize_tree(read_file(cfg.tree_path), params);
  return finish_rl(cfg, a, rl, revoke_group(rl, tree.at(a.dept)));
}

int run_coalesce(const CliConfig& cfg, const RlArgs& a) {
  SystemParams params = load_params(cfg);
  RevocationList rl = deserialize_rl(read_file(cfg.rl_path), params);
  DeptTree tree = deserialize_tree(read_file(cfg.tree_path), params);
  return finish_rl(cfg, a, rl, coalesce(rl, tree));
}

struct LabArgs {
  long bound = 0;
  std::string method = "mitm";
  std::string out;
};

void emit(const std::string& out, const std::string& doc) {
  if (out.empty()) {
    std::cout << doc << "\n";
  } else {
    write_file(out, doc);
  }
}

int run_lab_relations(const CliConfig& cfg, const LabArgs& a) {
  SystemParams params = load_params(cfg);
  RelationReport rep = a.method == "exhaustive" ? relation_search_exhaustive(params, a.bound)
                                                : relation_search_mitm(params, a.bound);
  emit(a.out, relation_report_document(rep));
  std::cerr << rep.relations.size() << " relations (" << rep.nontrivial_count() << " with >= 2 nonzero coordinates) in "
            << rep.wall_seconds << " s\n";
  return kOk;
}

int run_lab_orders(const CliConfig& cfg, const LabArgs& a) {
  SystemParams params = load_params(cfg);
  emit(a.out, order_report_document(order_report(params)));
  return kOk;
}

int run_reproduce(const std::string& which) {
  if (which != "paper-toy") throw CLI::ValidationError("reproduce", "unknown target " + which);
  int bad = 0;
  for (const auto& c : toy::reproduce()) {
    std::printf("%-4s %-42s expected %s\n", c.ok ? "ok" : "DIFF", c.name.c_str(), c.expected.c_str());
    if (!c.ok) {
      std::printf("     %-42s actual   %s\n", "", c.actual.c_str());
      ++bad;
    }
    if (!c.note.empty()) std::printf("     note: %s\n", c.note.c_str());
  }
  std::printf("%s\n", bad == 0 ? "all reference values reproduced" : "reference values differ");
  return bad == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical-revocation signatures on a rank-r elliptic curve"};
  app.require_subcommand(1);
  app.fallthrough();
  CliConfig cfg;
  app.add_option("--seed", cfg.seed, "Deterministic randomness (test mode); default is OS entropy");
  app.add_option("--params", cfg.params_path, "System parameters file (.params)");
  app.add_option("--gm-key", cfg.gm_key_path, "GM key file (.key)");
  app.add_option("--tree", cfg.tree_path, "Department tree file (.tree)");
  app.add_option("--rl-file", cfg.rl_path, "Revocation list used by revoke/rl commands (.rl)");
  app.add_flag("-v,--verbose", cfg.verbose);

  int code = kOk;

  SetupArgs setup_args;
  auto* setup_cmd = app.add_subcommand("setup", "Create system parameters, GM key, empty tree and RL");
  setup_cmd->add_option("--curve", setup_args.curve, "Catalog curve id");
  setup_cmd->add_option("--p", setup_args.p, "Prime for the reduction")->required();
  setup_cmd->add_option("--q", setup_args.q, "Prime modulus for key coordinates")->required();
  setup_cmd->add_option("--l-c", setup_args.l_c, "Challenge bits (default min(128, bitlen(q)-1))");
  setup_cmd->add_option("--l-s", setup_args.l_s, "Statistical slack bits");
  setup_cmd->callback([&] { code = run_setup(cfg, setup_args); });

  DeptArgs dept_args;
  auto* dept_cmd = app.add_subcommand("dept", "Department tree");
  dept_cmd->require_subcommand(1);
  auto* dept_add = dept_cmd->add_subcommand("add", "Add a department under --parent");
  dept_add->add_option("--parent", dept_args.parent, "Parent path ('/' for top level)");
  dept_add->add_option("--name", dept_args.name, "Department name")->required();
  dept_add->add_option("--coeffs", dept_args.coeffs, "Explicit hyperplane a0,a1,...,ar instead of a random one");
  dept_add->callback([&] { code = run_dept_add(cfg, dept_args); });

  JoinArgs join_args;
  auto* member_cmd = app.add_subcommand("member", "Member keys");
  member_cmd->require_subcommand(1);
  auto* join_cmd = member_cmd->add_subcommand("join", "Issue a certified key pair in a department");
  join_cmd->add_option("--dept", join_args.dept, "Department path")->required();
  join_cmd->add_option("--id", join_args.id, "Member id")->required();
  join_cmd->add_option("--fix", join_args.fix, "Fix a free coordinate, e.g. 1=6789 (1-based)");
  join_cmd->add_option("--out-key", join_args.out_key, "Key pair output (default <id>.key)");
  join_cmd->add_option("--out-pub", join_args.out_pub, "Certified public key output (default <id>.pub)");
  join_cmd->callback([&] { code = run_join(cfg, join_args); });

  SignArgs sign_args;
  auto* sign_cmd = app.add_subcommand("sign", "Sign a message file");
  sign_cmd->add_option("--key", sign_args.key)->required();
  sign_cmd->add_option("--rl", sign_args.rl, "Revocation list to prove against");
  sign_cmd->add_option("--msg-file", sign_args.msg_file)->required();
  sign_cmd->add_option("--out", sign_args.out)->required();
  sign_cmd->callback([&] { code = run_sign(cfg, sign_args); });

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature");
  verify_cmd->add_option("--pub", verify_args.pub)->required();
  verify_cmd->add_option("--rl", verify_args.rl, "Revocation list to verify against");
  verify_cmd->add_option("--msg-file", verify_args.msg_file)->required();
  verify_cmd->add_option("--sig", verify_args.sig)->required();
  verify_cmd->add_flag("--json", verify_args.json, "Machine-readable result");
  verify_cmd->callback([&] { code = run_verify(cfg, verify_args); });

  RlArgs rl_args;
  auto* revoke_cmd = app.add_subcommand("revoke", "Revoke a member or a department");
  revoke_cmd->require_subcommand(1);
  auto* revoke_member_cmd = revoke_cmd->add_subcommand("member", "Put a public key on the RL");
  revoke_member_cmd->add_option("--pub", rl_args.pub)->required();
  revoke_member_cmd->add_option("--rl", cfg.rl_path, "Revocation list to update");
  revoke_member_cmd->add_option("--out", rl_args.out, "Write the new RL here instead of in place");
  revoke_member_cmd->callback([&] { code = run_revoke_member(cfg, rl_args); });
  auto* revoke_group_cmd = revoke_cmd->add_subcommand("group", "Put a department's constraints on the RL");
  revoke_group_cmd->add_option("--dept", rl_args.dept)->required();
  revoke_group_cmd->add_option("--rl", cfg.rl_path, "Revocation list to update");
  revoke_group_cmd->add_option("--out", rl_args.out, "Write the new RL here instead of in place");
  revoke_group_cmd->callback([&] { code = run_revoke_group(cfg, rl_args); });

  auto* rl_cmd = app.add_subcommand("rl", "Revocation list maintenance");
  rl_cmd->require_subcommand(1);
  auto* coalesce_cmd = rl_cmd->add_subcommand("coalesce", "Replace complete sibling families by their parent");
  coalesce_cmd->add_option("--rl", cfg.rl_path, "Revocation list to update");
  coalesce_cmd->add_option("--out", rl_args.out, "Write the new RL here instead of in place");
  coalesce_cmd->callback([&] { code = run_coalesce(cfg, rl_args); });

  LabArgs lab_args;
  auto* lab_cmd = app.add_subcommand("lab", "Empirical probes of the relation-hardness assumptions");
  lab_cmd->require_subcommand(1);
  auto* rel_cmd = lab_cmd->add_subcommand("relations", "Search for integer relations among the generators");
  rel_cmd->add_option("--bound", lab_args.bound, "Search box [-B, B]^r")->required();
  rel_cmd->add_option("--method", lab_args.method)->check(CLI::IsMember({"mitm", "exhaustive"}));
  rel_cmd->add_option("--out", lab_args.out, "Report file (default stdout)");
  rel_cmd->callback([&] { code = run_lab_relations(cfg, lab_args); });
  auto* ord_cmd = lab_cmd->add_subcommand("orders", "Generator orders and Hasse interval");
  ord_cmd->add_option("--out", lab_args.out, "Report file (default stdout)");
  ord_cmd->callback([&] { code = run_lab_orders(cfg, lab_args); });

  std::string reproduce_target;
  auto* repro_cmd = app.add_subcommand("reproduce", "Recompute published reference values");
  repro_cmd->add_option("target", reproduce_target, "Reference data set (paper-toy: the y^2 = x^3 + 17 worked example)")->required();
  repro_cmd->callback([&] { code = run_reproduce(reproduce_target); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kSignerRevoked ? kRevoked : kViolation;
  }
  return code;
}
