// Copyright 2026 The qrc-robustness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstring>

#include "oracle_values.h"
#include "qrc/dynamics/reservoir.h"
#include "qrc/encoding/detuning_map.h"
#include "qrc/encoding/downsample.h"
#include "qrc/encoding/matrix_container.h"
#include "qrc/encoding/patches.h"
#include "qrc/encoding/pca.h"
#include "qrc/encoding/pipeline.h"
#include "qrc/error.h"
#include "test_support.h"

namespace qrc::encoding {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(Downsample, ConstantImageStaysConstant) {
  const Image img = Image::from_pixels(28, VectorXd::Constant(784, 0.375));
  const Image out = downsample(img, 16);
  EXPECT_EQ(out.side, 16);
  EXPECT_LE((out.pixels.array() - 0.375).abs().maxCoeff(), 1e-15);
}

TEST(Downsample, CheckerboardBlocksAverageToHalf) {
  VectorXd px(16);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) px[r * 4 + c] = (r + c) % 2;
  }
  const Image out = downsample(Image::from_pixels(4, px), 2);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(out.pixels[k], 0.5);
}

TEST(Downsample, MatchesAreaOracle) {
  VectorXd px(784);
  for (int r = 0; r < 28; ++r) {
    for (int c = 0; c < 28; ++c) px[r * 28 + c] = ((31 * r + 17 * c) % 256) / 255.0;
  }
  const Image out = downsample(Image::from_pixels(28, px), 16);
  for (int k = 0; k < 256; ++k) EXPECT_NEAR(out.pixels[k], oracle::kAreaDownsample[k], 1e-13) << k;
}

TEST(Downsample, WeightsAreStochasticAndMatrixMatchesApply) {
  const AreaResampler r(28, 16);
  EXPECT_LE((r.weights().rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-14);
  EXPECT_GE(r.weights().minCoeff(), 0.0);
  Rng rng(1);
  const VectorXd x = testing::random_vector(rng, 784, 0.0, 1.0);
  EXPECT_LE((r.matrix() * x - r.apply(x)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Downsample, RejectsBadTargets) {
  const Image img = Image::from_pixels(4, VectorXd::Zero(16));
  EXPECT_THROW(downsample(img, 0), ConfigError);
  EXPECT_THROW(downsample(img, 5), ConfigError);
  EXPECT_THROW(Image::from_pixels(4, VectorXd::Constant(16, 1.5)), ConfigError);
}

TEST(Patches, GridCountAndLength) {
  Rng rng(2);
  const VectorXd img = testing::random_vector(rng, 256, 0.0, 1.0);
  const PatchSet set = extract_patches(img, 16, 4);
  ASSERT_EQ(set.count(), 16);
  for (const VectorXd& p : set.patches) EXPECT_EQ(p.size(), 16);
  // Patch 1 is the second block of the first block row.
  EXPECT_EQ(set.patches[1][0], img[4]);
  EXPECT_EQ(set.patches[4][0], img[4 * 16]);
}

TEST(Patches, SinglePatchIsTheImage) {
  Rng rng(3);
  const VectorXd img = testing::random_vector(rng, 64, 0.0, 1.0);
  const PatchSet set = extract_patches(img, 8, 8);
  ASSERT_EQ(set.count(), 1);
  EXPECT_EQ(set.patches[0], img);
}

TEST(Patches, ReconstructionRoundTrip) {
  Rng rng(4);
  const VectorXd img = testing::random_vector(rng, 256, 0.0, 1.0);
  EXPECT_EQ(reconstruct_image(extract_patches(img, 16, 8)), img);
  EXPECT_THROW(extract_patches(img, 16, 5), ConfigError);
}

TEST(Patches, PixelIndicesFollowExtraction) {
  Rng rng(5);
  const VectorXd img = testing::random_vector(rng, 144, 0.0, 1.0);
  const PatchSet set = extract_patches(img, 12, 4);
  const std::vector<int> idx = patch_pixel_indices(12, 4);
  for (int v = 0; v < set.count(); ++v) {
    for (int e = 0; e < 16; ++e) EXPECT_EQ(set.patches[v][e], img[idx[v * 16 + e]]);
  }
}

MatrixXd random_rows(Rng& rng, int n, int dim) {
  // Anisotropic Gaussian rows so the spectrum is well separated.
  MatrixXd m(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = rng.normal() * std::pow(0.8, j) + 0.1 * j;
  }
  return m;
}

TEST(Pca, RankOneDataSpansTheLine) {
  Rng rng(6);
  const VectorXd dir = testing::random_vector(rng, 16, -1.0, 1.0).normalized();
  MatrixXd rows(50, 16);
  for (int i = 0; i < 50; ++i) rows.row(i) = (rng.normal() * dir).transpose();
  const PcaModel m = fit_pca(rows, {1, 0.0});
  EXPECT_NEAR(std::abs(m.components.col(0).dot(dir)), 1.0, 1e-12);
  EXPECT_LE(m.eigenvalues.tail(15).cwiseAbs().maxCoeff(), 1e-12 * m.eigenvalues[0]);
}

TEST(Pca, ReconstructionErrorEqualsDiscardedVariance) {
  Rng rng(7);
  const MatrixXd rows = random_rows(rng, 400, 16);
  const PcaModel m = fit_pca(rows, {8, 0.0});
  double err = 0.0;
  for (int i = 0; i < rows.rows(); ++i) {
    const VectorXd x = rows.row(i).transpose();
    err += (m.reconstruct(m.project(x)) - x).squaredNorm();
  }
  err /= rows.rows();
  EXPECT_NEAR(err, m.eigenvalues.tail(8).sum(), 1e-8);
}

TEST(Pca, ComponentsAreOrthonormalAndSigned) {
  Rng rng(8);
  const PcaModel m = fit_pca(random_rows(rng, 200, 16), {8, 0.0});
  EXPECT_LE((m.components.transpose() * m.components - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
  for (int k = 0; k < 8; ++k) {
    Eigen::Index at;
    m.components.col(k).cwiseAbs().maxCoeff(&at);
    EXPECT_GT(m.components(at, k), 0.0);
  }
  for (int k = 1; k < 16; ++k) EXPECT_LE(m.eigenvalues[k], m.eigenvalues[k - 1]);
}

TEST(Pca, ProjectionIdentities) {
  Rng rng(9);
  const PcaModel m = fit_pca(random_rows(rng, 200, 16), {4, 0.0});
  EXPECT_LE(m.project(m.mean).cwiseAbs().maxCoeff(), 1e-15);
  const VectorXd e1 = m.project(m.mean + 2.5 * m.components.col(0));
  EXPECT_NEAR(e1[0], 2.5, 1e-12);
  EXPECT_LE(e1.tail(3).cwiseAbs().maxCoeff(), 1e-12);
  for (int t = 0; t < 10; ++t) {
    const VectorXd x = testing::random_vector(rng, 16, -3.0, 3.0);
    EXPECT_LE(m.project(x).norm(), (x - m.mean).norm() + 1e-12);
  }
  EXPECT_THROW(m.project(VectorXd::Zero(5)), ConfigError);
}

TEST(Pca, VarianceThresholdPicksSmallestDelta) {
  Rng rng(10);
  const PcaModel m = fit_pca(random_rows(rng, 300, 16), {0, 0.9});
  EXPECT_GT(m.retained_variance(), 0.9);
  const double without_last = m.eigenvalues.head(m.retained_dim - 1).sum() / m.eigenvalues.sum();
  EXPECT_LE(without_last, 0.9);
}

TEST(Pca, RankDeficientDataReducesDelta) {
  Rng rng(11);
  MatrixXd rows = MatrixXd::Zero(30, 16);
  for (int i = 0; i < 30; ++i) {
    rows(i, 0) = rng.normal();
    rows(i, 1) = rng.normal();
  }
  EXPECT_EQ(fit_pca(rows, {4, 0.0}).retained_dim, 2);
  EXPECT_THROW(fit_pca(MatrixXd::Zero(3, 16), {4, 0.0}), ConfigError);
  EXPECT_THROW(fit_pca(MatrixXd::Zero(30, 16), {2, 0.0}), NumericalError);
}

TEST(DetuningMap, EndpointsMidpointAndClamp) {
  const DetuningMap map(VectorXd::Constant(1, -2.0), VectorXd::Constant(1, 6.0), 0.0, 62.0);
  EXPECT_DOUBLE_EQ(map.map(VectorXd::Constant(1, -2.0))[0], 0.0);
  EXPECT_DOUBLE_EQ(map.map(VectorXd::Constant(1, 6.0))[0], 62.0);
  EXPECT_DOUBLE_EQ(map.map(VectorXd::Constant(1, 2.0))[0], 31.0);
  EXPECT_DOUBLE_EQ(map.map(VectorXd::Constant(1, 9.0))[0], 62.0);
  EXPECT_DOUBLE_EQ(map.map(VectorXd::Constant(1, -9.0))[0], 0.0);
  EXPECT_DOUBLE_EQ(map.jacobian_diagonal(VectorXd::Constant(1, 1.0))[0], 62.0 / 8.0);
  EXPECT_EQ(map.jacobian_diagonal(VectorXd::Constant(1, 7.0))[0], 0.0);
}

TEST(DetuningMap, FitAndEmptyRange) {
  MatrixXd f(3, 2);
  f << 1.0, 5.0, 3.0, 5.0, 2.0, 5.0;
  const DetuningMap map = DetuningMap::fit(f, 0.0, 10.0);
  EXPECT_EQ(map.feature_min()[0], 1.0);
  EXPECT_EQ(map.feature_max()[0], 3.0);
  const VectorXd out = map.map(f.row(2).transpose());
  EXPECT_DOUBLE_EQ(out[0], 5.0);
  EXPECT_DOUBLE_EQ(out[1], 5.0);
  EXPECT_EQ(map.jacobian_diagonal(f.row(0).transpose())[1], 0.0);
}

PipelineConfig small_config(int n_atoms, int s = 16, int p = 8) {
  PipelineConfig c;
  c.downsample_size = s;
  c.patch_width = p;
  c.reservoir = dynamics::ReservoirConfig::reference(n_atoms);
  return c;
}

TEST(Pipeline, ReferenceEmbeddingShapeAndRange) {
  Rng rng(12);
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 30), small_config(8));
  EXPECT_EQ(pipe.num_patches(), 4);
  EXPECT_EQ(pipe.retained_dim(), 8);
  const VectorXd e = pipe.embed(testing::blob_image(rng));
  ASSERT_EQ(e.size(), 216);
  EXPECT_LE(e.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Pipeline, SinglePatchEqualsPatchEmbedding) {
  Rng rng(13);
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 30), small_config(4, 8, 8));
  ASSERT_EQ(pipe.num_patches(), 1);
  const VectorXd img = testing::blob_image(rng);
  const VectorXd ref = dynamics::reservoir_embed(pipe.config().reservoir, pipe.patch_detunings(img)[0]);
  EXPECT_EQ(pipe.embed(img), ref);
}

TEST(Pipeline, IdenticalPatchesAverageToPatchEmbedding) {
  Rng rng(14);
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 30), small_config(4));
  const VectorXd img = VectorXd::Constant(784, 0.3);
  const auto dets = pipe.patch_detunings(img);
  for (const auto& d : dets) EXPECT_EQ(d, dets[0]);
  const VectorXd ref = dynamics::reservoir_embed(pipe.config().reservoir, dets[0]);
  EXPECT_LE((pipe.embed(img) - ref).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Pipeline, ClassicalFeaturesAreAffine) {
  Rng rng(15);
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 30), small_config(4));
  const VectorXd a = testing::blob_image(rng), b = testing::blob_image(rng);
  const VectorXd lhs = pipe.classical_features(a) - pipe.classical_features(b);
  EXPECT_LE((lhs - pipe.classical_jacobian() * (a - b)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((pipe.patch_features(a).colwise().mean().transpose() - pipe.classical_features(a)).cwiseAbs().maxCoeff(),
            1e-14);
}

// Whether every encoded feature of every patch lies inside the detuning range
// with a relative margin.
bool interior(const EncodingPipeline& pipe, const VectorXd& img, double margin) {
  const auto& c = pipe.config().reservoir;
  const double lo = c.detuning_min + margin * c.detuning_range();
  const double hi = c.detuning_max - margin * c.detuning_range();
  for (const auto& d : pipe.patch_detunings(img)) {
    for (int i = 0; i < pipe.retained_dim(); ++i) {
      if (d[i] < lo || d[i] > hi) return false;
    }
  }
  return true;
}

TEST(Pipeline, DirectionalDerivativeMatchesPixelDifferences) {
  Rng rng(16);
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 40), small_config(4));
  int checked = 0;
  for (int attempt = 0; attempt < 50 && checked < 3; ++attempt) {
    const VectorXd img = (0.5 * testing::blob_image(rng)).array() + 0.2;
    if (!interior(pipe, img, 0.05)) continue;
    const EmbeddingWithJacobian ej = pipe.embed_with_jacobian(img);
    EXPECT_EQ(ej.embedding, pipe.embed(img));
    const VectorXd v = testing::random_vector(rng, 784, -1.0, 1.0);
    const double h = 1e-4;
    const VectorXd fd = (pipe.embed(img + h * v) - pipe.embed(img - h * v)) / (2 * h);
    EXPECT_LE((ej.jacobian * v - fd).norm(), 1e-3 * fd.norm());
    ++checked;
  }
  EXPECT_EQ(checked, 3);
}

TEST(Pipeline, ZeroDriveSingleSiteJacobianRowsVanish) {
  Rng rng(17);
  PipelineConfig c = small_config(3);
  c.reservoir.rabi_frequency = 0.0;
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 30), c);
  const MatrixXd j = pipe.pipeline_jacobian(testing::blob_image(rng));
  const int block = c.reservoir.observables_per_snapshot();
  for (int m = 0; m < c.reservoir.num_snapshots; ++m) {
    EXPECT_LE(j.middleRows(m * block, 3).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Pipeline, ClampedDimensionContributesNothing) {
  Rng rng(18);
  const PipelineConfig c = small_config(4, 16, 16);
  const EncodingPipeline fitted = EncodingPipeline::fit(testing::blob_images(rng, 30), c);
  // Move dimension 0's fitted range far below every feature so it is clamped.
  VectorXd fmin = fitted.detuning_map().feature_min(), fmax = fitted.detuning_map().feature_max();
  fmin[0] = -1e6;
  fmax[0] = -1e6 + 1.0;
  const EncodingPipeline pipe(c, fitted.pca(), DetuningMap(fmin, fmax, 0.0, c.reservoir.detuning_max));
  // Pixel directions that move a single PCA feature of the single patch.
  const MatrixXd a = pipe.resampler().matrix();
  const MatrixXd a_pinv = a.transpose() * (a * a.transpose()).inverse();
  const VectorXd u0 = a_pinv * pipe.pca().components.col(0);
  const VectorXd u1 = a_pinv * pipe.pca().components.col(1);
  const VectorXd img = testing::blob_image(rng);
  const MatrixXd j = pipe.pipeline_jacobian(img);
  const double moved = (j * u1).cwiseAbs().maxCoeff();
  EXPECT_GT(moved, 1e-6);
  EXPECT_LE((j * u0).cwiseAbs().maxCoeff(), 1e-10 * moved);
}

TEST(Pipeline, BatchesMatchSingleCalls) {
  Rng rng(19);
  const EncodingPipeline pipe = EncodingPipeline::fit(testing::blob_images(rng, 30), small_config(3));
  const auto imgs = testing::blob_images(rng, 4);
  const MatrixXd e = pipe.embed_batch(imgs);
  const MatrixXd f = pipe.classical_batch(imgs);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(VectorXd(e.row(i).transpose()), pipe.embed(imgs[i]));
    EXPECT_EQ(VectorXd(f.row(i).transpose()), pipe.classical_features(imgs[i]));
  }
}

TEST(MatrixContainer, RoundTripAndCorruption) {
  Rng rng(20);
  MatrixXd m(3, 5);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  const std::string bytes = encode_matrix(kEmbeddingMagic, m);
  EXPECT_EQ(decode_matrix(bytes, kEmbeddingMagic), m);

  auto kind_of = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const DataError& e) {
      return e.kind();
    }
    return DataError::Kind::kIo;
  };
  EXPECT_EQ(kind_of([&] { decode_matrix(bytes, kPcaMagic); }), DataError::Kind::kBadMagic);
  EXPECT_EQ(kind_of([&] { decode_matrix(bytes.substr(0, bytes.size() - 9), kEmbeddingMagic); }),
            DataError::Kind::kTruncated);
  std::string flipped = bytes;
  flipped[20] ^= 1;
  EXPECT_EQ(kind_of([&] { decode_matrix(flipped, kEmbeddingMagic); }), DataError::Kind::kChecksum);
  EXPECT_EQ(kind_of([&] { decode_matrix(bytes + "x", kEmbeddingMagic); }), DataError::Kind::kFormat);
}

TEST(MatrixContainer, PcaRoundTrip) {
  Rng rng(21);
  const PcaModel m = fit_pca(random_rows(rng, 100, 16), {5, 0.0});
  const PcaModel back = pca_from_matrix(pca_to_matrix(m));
  EXPECT_EQ(back.retained_dim, 5);
  EXPECT_EQ(back.mean, m.mean);
  EXPECT_EQ(back.components, m.components);
  EXPECT_EQ(back.eigenvalues, m.eigenvalues);
}

}  // namespace
}  // namespace qrc::encoding
