#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "flowclust/error.hpp"
#include "flowclust/io.hpp"

namespace flowclust {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / fmt_name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name) const { return dir_ / name; }
  void write_text(const std::string& name, const std::string& text) const { std::ofstream(file(name)) << text; }

 private:
  static std::string fmt_name() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    return std::string("flowclust_io_") + info->name();
  }
  fs::path dir_;
};

TEST_F(IoTest, GraphRoundTripKeepsIsolatedNodes) {
  const EmpiricalGraph g(5, {{0, 1, 0.5}, {1, 3, 2.25}});
  io::write_graph_csv(file("g.csv"), g, {{"source", "test"}});
  ASSERT_TRUE(fs::exists(io::sidecar_path(file("g.csv"))));
  const EmpiricalGraph back = io::read_graph_csv(file("g.csv"));
  EXPECT_EQ(back.num_nodes(), 5u);
  ASSERT_EQ(back.num_edges(), 2u);
  EXPECT_EQ(back.edges()[1].tail, 1u);
  EXPECT_EQ(back.edges()[1].head, 3u);
  EXPECT_EQ(back.edges()[1].weight, 2.25);
  EXPECT_EQ(io::read_json(io::sidecar_path(file("g.csv")))["params"]["source"], "test");
}

TEST_F(IoTest, GraphWithoutSidecarUsesLargestIndex) {
  write_text("g.csv", "i,j,w\n1,2,1\n2,4,0.5\n");
  EXPECT_EQ(io::read_graph_csv(file("g.csv")).num_nodes(), 4u);
}

TEST_F(IoTest, MalformedGraphs) {
  write_text("a.csv", "i,j\n1,2\n");
  EXPECT_THROW(io::read_graph_csv(file("a.csv")), DataError);
  write_text("b.csv", "i,j,w\n1,2,abc\n");
  EXPECT_THROW(io::read_graph_csv(file("b.csv")), DataError);
  write_text("c.csv", "i,j,w\n0,2,1\n");
  EXPECT_THROW(io::read_graph_csv(file("c.csv")), DataError);
  write_text("d.csv", "i,j,w\n1,2\n");
  EXPECT_THROW(io::read_graph_csv(file("d.csv")), DataError);
  write_text("e.csv", "i,j,w\n1,1,1\n");
  EXPECT_THROW(io::read_graph_csv(file("e.csv")), DataError);
  write_text("f.csv", "i,j,w\n1,3,1\n");
  write_text("f.csv.json", "{\"n\": 2}");
  EXPECT_THROW(io::read_graph_csv(file("f.csv")), DataError);
  EXPECT_THROW(io::read_graph_csv(file("missing.csv")), DataError);
}

TEST_F(IoTest, SignalRoundTripIsExact) {
  const std::vector<double> v{0.1, 1.0 / 3.0, -2e-17, 5.0};
  io::write_signal_csv(file("s.csv"), "u", v);
  EXPECT_EQ(io::read_signal_csv(file("s.csv")), v);
  write_text("bad.csv", "i,u\n2,0.5\n");
  EXPECT_THROW(io::read_signal_csv(file("bad.csv")), DataError);
}

TEST_F(IoTest, LabelsRoundTrip) {
  const std::vector<int> labels{1, 2, 2, 3};
  io::write_labels_csv(file("l.csv"), labels);
  EXPECT_EQ(io::read_labels_csv(file("l.csv")), labels);
  write_text("bad.csv", "i,label\n1,0\n");
  EXPECT_THROW(io::read_labels_csv(file("bad.csv")), DataError);
}

TEST_F(IoTest, PointsRoundTrip) {
  PointCloud pc;
  pc.points.resize(2, 2);
  pc.points << 0.25, -1.5, 3.0, 1e-3;
  pc.labels = {2, 1};
  io::write_points_csv(file("p.csv"), pc);
  const PointCloud back = io::read_points_csv(file("p.csv"));
  EXPECT_EQ(back.points, pc.points);
  EXPECT_EQ(back.labels, pc.labels);
  write_text("bad.csv", "x,y\n1,2\n");
  EXPECT_THROW(io::read_points_csv(file("bad.csv")), DataError);
}

TEST_F(IoTest, FeaturesAndTableHeaders) {
  Eigen::MatrixXd f(2, 2);
  f << 1, 2, 3, 4;
  io::write_features_csv(file("f.csv"), f);
  std::ifstream in(file("f.csv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "i,f1,f2");
  io::write_table_csv(file("t.csv"), {"a", "b"}, {{1.0}, {2.0}});
  std::ifstream tin(file("t.csv"));
  std::string h2, row;
  std::getline(tin, h2);
  std::getline(tin, row);
  EXPECT_EQ(h2, "i,a,b");
  EXPECT_EQ(row, "1,1,2");
  EXPECT_THROW(io::write_table_csv(file("t.csv"), {"a", "b"}, {{1.0}, {2.0, 3.0}}), std::invalid_argument);
}

TEST_F(IoTest, PnmRoundTrip) {
  ImageGrid img{2, 3, 3, {}};
  for (std::size_t i = 0; i < 18; ++i) img.pixels.push_back(static_cast<double>(i * 15) / 255.0);
  io::write_pnm(file("x.ppm"), img);
  const ImageGrid back = io::read_pnm(file("x.ppm"));
  EXPECT_EQ(back.height, 2u);
  EXPECT_EQ(back.width, 3u);
  EXPECT_EQ(back.channels, 3u);
  for (std::size_t i = 0; i < 18; ++i) EXPECT_NEAR(back.pixels[i], img.pixels[i], 1e-12);

  io::write_mask_pgm(file("m.pgm"), {true, false, false, true}, 2, 2);
  const ImageGrid mask = io::read_pnm(file("m.pgm"));
  EXPECT_EQ(mask.pixels, (std::vector<double>{1.0, 0.0, 0.0, 1.0}));
}

TEST_F(IoTest, PnmSixteenBitAndComments) {
  {
    std::ofstream out(file("w.pgm"), std::ios::binary);
    out << "P5\n# comment\n2 1\n1000\n";
    const unsigned char raw[] = {0x01, 0xF4, 0x03, 0xE8};  // 500, 1000
    out.write(reinterpret_cast<const char*>(raw), 4);
  }
  const ImageGrid img = io::read_pnm(file("w.pgm"));
  EXPECT_EQ(img.pixels, (std::vector<double>{0.5, 1.0}));
}

TEST_F(IoTest, MalformedPnm) {
  write_text("a.pgm", "P2\n1 1\n255\n0\n");
  EXPECT_THROW(io::read_pnm(file("a.pgm")), DataError);
  write_text("b.pgm", "P5\n2 2\n255\nab");
  EXPECT_THROW(io::read_pnm(file("b.pgm")), DataError);
  write_text("c.pgm", "P5\n2 2\n70000\n");
  EXPECT_THROW(io::read_pnm(file("c.pgm")), DataError);
  write_text("d.pgm", "P5\n2");
  EXPECT_THROW(io::read_pnm(file("d.pgm")), DataError);
}

TEST(ParseNodeList, Examples) {
  EXPECT_EQ(io::parse_node_list("3,5,7"), (std::vector<NodeId>{2, 4, 6}));
  EXPECT_EQ(io::parse_node_list("1"), (std::vector<NodeId>{0}));
  EXPECT_THROW(io::parse_node_list("0"), DataError);
  EXPECT_THROW(io::parse_node_list("1,,2"), DataError);
  EXPECT_THROW(io::parse_node_list("x"), DataError);
}

TEST(SidecarPath, AppendsJson) { EXPECT_EQ(io::sidecar_path("out/a.csv"), std::filesystem::path("out/a.csv.json")); }

}  // namespace
}  // namespace flowclust
