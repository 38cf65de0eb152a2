#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mml/dataset_io.hpp"
#include "mml/errors.hpp"

using namespace mml;

TEST(ParseDataset, CommentsAndBlankLines) {
  std::istringstream in("# header\n1.5\n\n  2.25  \n# trailing\n3e-1\n");
  const DataSet d = parse_dataset(in, "mem");
  EXPECT_EQ(d.observations, (std::vector<double>{1.5, 2.25, 0.3}));
}

TEST(ParseDataset, ReportsLineOfBadValue) {
  std::istringstream bad("1.0\nabc\n");
  try {
    parse_dataset(bad, "mem");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("mem:2"), std::string::npos) << e.what();
  }
  std::istringstream neg("1.0\n-2\n");
  EXPECT_THROW(parse_dataset(neg, "mem"), ParseError);
  std::istringstream junk("1.0 2.0\n");
  EXPECT_THROW(parse_dataset(junk, "mem"), ParseError);
}

TEST(DatasetFile, RoundTripIsExact) {
  const DataSet d{{0.1, 1.0 / 3.0, 2.718281828459045, 1e-300}};
  const auto path = std::filesystem::temp_directory_path() / "mml_estim_roundtrip.txt";
  {
    std::ofstream out(path);
    write_dataset(out, d, "generated");
  }
  EXPECT_EQ(read_dataset(path).observations, d.observations);
  std::filesystem::remove(path);
}

TEST(DatasetFile, MissingFileIsIoError) {
  EXPECT_THROW(read_dataset("/nonexistent/data.txt"), IoError);
  try {
    read_dataset("/nonexistent/data.txt");
  } catch (const Error& e) {
    EXPECT_FALSE(e.is_numerical());
    EXPECT_NE(std::string(e.what()).find("/nonexistent/data.txt"), std::string::npos);
  }
}
