#include <wt1/sweep.hpp>
#include <wt1/umbral.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace wt1;
namespace fs = std::filesystem;

namespace {

/// Copy of the bundled data in a scratch directory, removed on destruction.
class ScratchData {
public:
    explicit ScratchData(const std::string& tag)
        : dir_(fs::temp_directory_path() / ("wt1_" + tag + "_" + std::to_string(::getpid())))
    {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        for (const auto& f : data_files()) fs::copy_file(data_dir() / f, dir_ / f);
        fs::copy_file(data_dir() / "MANIFEST.sha256", dir_ / "MANIFEST.sha256");
    }
    ~ScratchData() { fs::remove_all(dir_); }

    const fs::path& path() const { return dir_; }

    void replace(const std::string& file, const std::string& from, const std::string& to, bool rehash)
    {
        std::string text = read_file(dir_ / file);
        auto pos = text.find(from);
        ASSERT_NE(pos, std::string::npos) << from;
        text.replace(pos, from.size(), to);
        std::ofstream(dir_ / file, std::ios::binary) << text;
        if (!rehash) return;
        std::ofstream man(dir_ / "MANIFEST.sha256", std::ios::binary);
        for (const auto& f : data_files()) man << sha256_hex(read_file(dir_ / f)) << "  " << f << "\n";
    }

private:
    fs::path dir_;
};

}  // namespace

TEST(Umbral, LoadsBundledData)
{
    auto ds = load_dataset();
    EXPECT_EQ(class_sizes(ds.chars), (std::vector<i64>{1, 1, 3, 3, 2, 2}));
    EXPECT_EQ(ds.decomps.size(), 98u);
    EXPECT_FALSE(ds.levels.empty());
}

TEST(Umbral, DecompositionsReproduced)
{
    auto ds = load_dataset();
    auto r = verify_decompositions(ds);
    EXPECT_TRUE(r.ok) << (r.issues.empty() ? "" : r.issues.front());
    EXPECT_EQ(r.checked, 98);
    EXPECT_TRUE(coefficient_parity_audit(ds).ok);
}

TEST(Umbral, SampleMultiplicities)
{
    auto ds = load_dataset();
    auto m = decompose_multiplicities(ds, 1, 71);
    std::vector<Rat> want{0, 0, 2, 0, 0, 0};
    EXPECT_EQ(m, want);
}

TEST(Umbral, Grading)
{
    EXPECT_TRUE(grading_holds(3, 27));
    EXPECT_TRUE(grading_holds(1, -1));
    EXPECT_FALSE(grading_holds(3, 9));
}

TEST(Umbral, Xi9Consistency)
{
    EXPECT_TRUE(verify_xi9_consistency("3A", Rat(4)).ok);
    EXPECT_TRUE(verify_xi9_consistency("6A", Rat(4)).ok);
}

TEST(Umbral, SignFlippedXi9Detected)
{
    auto r = verify_xi9_consistency("3A", Rat(4), -1);
    EXPECT_FALSE(r.ok);
}

TEST(Umbral, EditedDataRefused)
{
    ScratchData d("digest");
    d.replace("coefficients_9.csv", "1,71,4,4,0,0,-2,-2", "1,71,4,4,0,0,-2,-1", false);
    EXPECT_THROW(load_dataset(d.path()), DataDigestError);
}

TEST(Umbral, CorruptedLevelsRecordRejected)
{
    ScratchData d("levels");
    d.replace("levels.csv", "A1^24,2,2A,2,1,2,none", "A1^24,2,2A,2,1,5,none", true);
    EXPECT_THROW(load_dataset(d.path()), DataError);
}

TEST(Umbral, NegativeIdentityCoefficientFlagged)
{
    ScratchData d("negative");
    d.replace("coefficients_9.csv", "1,71,4,4,0,0,-2,-2", "1,71,-4,4,0,0,-2,-2", true);
    auto ds = load_dataset(d.path());
    EXPECT_FALSE(coefficient_parity_audit(ds).ok);
    EXPECT_FALSE(verify_decompositions(ds).ok);
}

TEST(Umbral, Gamma0GeneratorsAndBlocks)
{
    auto gens = gamma0_3_generators();
    EXPECT_EQ(generated_order(gens, 36), gamma0_image(3, 36).size());
    EXPECT_TRUE(block_structure_check(gens));
    EXPECT_THROW(block_structure_check({Sl2Word::S()}), std::invalid_argument);
}

TEST(Umbral, SweepMatchesShading)
{
    auto ds = load_dataset();
    for (const auto& row : umbral_sweep(ds, 10000000)) {
        const std::string tag = row.record.root_system + " " + row.record.cls;
        EXPECT_EQ(row.method == SweepMethod::Lemma, row.record.shade == Shade::None) << tag;
        if (row.method != SweepMethod::Skipped) {
            EXPECT_EQ(row.vanishes, row.record.shade != Shade::Orange) << tag;
        }
    }
}
