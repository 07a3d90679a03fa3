#include "krtorus/report_json.hpp"

namespace krtorus {

namespace {

constexpr const char* kFormat = "kr-torus/1";

Json disk_to_json(const DiskField& d) {
  Json values = Json::array();
  for (const Rational& v : d.values) values.push_back(format_scalar(v));
  Json tris = Json::array();
  for (const Triangle& t : d.triangles) tris.push_back({t[0], t[1], t[2]});
  return Json{{"id", d.id},
              {"cell", d.cell},
              {"cut_level", format_scalar(d.cut_level)},
              {"vertices", d.values.size()},
              {"triangles", d.triangles.size()},
              {"euler", d.euler_characteristic()},
              {"boundary", d.boundary},
              {"values", values},
              {"faces", tris}};
}

DiskField disk_from_json(const Json& j) {
  DiskField d;
  d.id = j.at("id").get<int>();
  d.cell = j.at("cell").get<int>();
  d.cut_level = parse_scalar(j.at("cut_level").get<std::string>());
  for (const auto& v : j.at("values")) d.values.push_back(parse_scalar(v.get<std::string>()));
  for (const auto& t : j.at("faces")) d.triangles.push_back({t.at(0), t.at(1), t.at(2)});
  d.boundary = j.at("boundary").get<std::vector<int>>();
  return d;
}

}  // namespace

Json report_to_json(const AnalysisReport& r) {
  Json table = Json::array();
  for (const auto& row : r.orbit_table)
    table.push_back({{"i", row[0]}, {"j", row[1]}, {"k", row[2]}, {"cell", row[3]}});
  Json atoms = Json::array();
  const std::vector<GroupExpr>* list = nullptr;
  std::vector<GroupExpr> single;
  if (!r.expr.children.empty()) {
    const GroupExpr& base = r.expr.children.front();
    if (base.kind == GroupExpr::Kind::kAtom) {
      single = {base};
      list = &single;
    } else if (base.kind == GroupExpr::Kind::kDirectProduct) {
      list = &base.children;
    }
  }
  if (list)
    for (std::size_t i = 0; i < list->size(); ++i)
      atoms.push_back({{"id", (*list)[i].atom},
                       {"cell", r.disks.size() > i ? r.disks[i].cell : -1},
                       {"kr_subtree", (*list)[i].kr_subtree}});
  Json disks = Json::array();
  for (const DiskField& d : r.disks) disks.push_back(disk_to_json(d));
  return Json{
      {"format", kFormat},
      {"surface",
       {{"vertices", r.vertices}, {"triangles", r.triangles}, {"chi", r.chi}, {"genus", r.genus}}},
      {"reeb", {{"nodes", r.reeb_nodes}, {"edges", r.reeb_edges}, {"is_tree", r.is_tree},
                {"b1", r.reeb_b1}}},
      {"special",
       {{"node", r.special_node},
        {"level", format_scalar(r.special_level)},
        {"zero_cells", r.zero_cells},
        {"one_cells", r.one_cells},
        {"two_cells", r.two_cells},
        {"branch_chis", r.branch_chis}}},
      {"symmetry",
       {{"order", r.order},
        {"n", r.n},
        {"m", r.m},
        {"r", r.r},
        {"generators", {{"L", r.generator_L}, {"M", r.generator_M}}},
        {"realized", r.realized},
        {"orbit_table", table}}},
      {"group", {{"expr", r.expr.to_string()}, {"atoms", atoms}}},
      {"disks", disks}};
}

AnalysisReport report_from_json(const Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat)
      fail(ErrorCode::kParse, "unsupported report format");
    AnalysisReport r;
    const Json& s = doc.at("surface");
    r.vertices = s.at("vertices");
    r.triangles = s.at("triangles");
    r.chi = s.at("chi");
    r.genus = s.at("genus");
    const Json& g = doc.at("reeb");
    r.reeb_nodes = g.at("nodes");
    r.reeb_edges = g.at("edges");
    r.is_tree = g.at("is_tree");
    r.reeb_b1 = g.at("b1");
    const Json& sp = doc.at("special");
    r.special_node = sp.at("node");
    r.special_level = parse_scalar(sp.at("level").get<std::string>());
    r.zero_cells = sp.at("zero_cells");
    r.one_cells = sp.at("one_cells");
    r.two_cells = sp.at("two_cells");
    r.branch_chis = sp.at("branch_chis").get<std::vector<int>>();
    const Json& sy = doc.at("symmetry");
    r.order = sy.at("order");
    r.n = sy.at("n");
    r.m = sy.at("m");
    r.r = sy.at("r");
    r.generator_L = sy.at("generators").at("L").get<std::vector<int>>();
    r.generator_M = sy.at("generators").at("M").get<std::vector<int>>();
    r.realized = sy.at("realized");
    for (const auto& row : sy.at("orbit_table"))
      r.orbit_table.push_back({row.at("i"), row.at("j"), row.at("k"), row.at("cell")});
    std::vector<std::string> subtrees;
    for (const auto& a : doc.at("group").at("atoms"))
      subtrees.push_back(a.at("kr_subtree").get<std::string>());
    if (static_cast<int>(subtrees.size()) != r.r)
      fail(ErrorCode::kParse, "atom list does not match the orbit count");
    r.expr = orbit_group_expr(r.n, r.nm(), subtrees);
    if (r.expr.to_string() != doc.at("group").at("expr").get<std::string>())
      fail(ErrorCode::kParse, "group expression does not match n, m and r");
    for (const auto& d : doc.at("disks")) r.disks.push_back(disk_from_json(d));
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed report: ") + e.what());
  }
}

Json verification_to_json(const VerificationRecord& rec) {
  Json checks = Json::array();
  for (const auto& c : rec.checks)
    checks.push_back(
        {{"name", c.name}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"atoms", rec.atoms},
              {"n", rec.n},
              {"nm", rec.nm},
              {"r", rec.r},
              {"exhaustive", rec.exhaustive},
              {"sampled_triples", rec.sampled_triples},
              {"kernel_size", rec.kernel_size},
              {"expected_kernel_size", rec.expected_kernel_size},
              {"checks", checks},
              {"passed", rec.passed()}};
}

Json error_to_json(const Error& error) {
  return Json{{"error", std::string(error_code_name(error.code()))}, {"message", error.what()}};
}

}  // namespace krtorus
