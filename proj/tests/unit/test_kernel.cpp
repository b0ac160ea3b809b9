#include <cmath>

#include <gtest/gtest.h>

#include "gbpwalk/errors.hpp"
#include "gbpwalk/kernel.hpp"

using namespace gbp;

TEST(Kernel, EvaluatesEachVariant) {
    EXPECT_DOUBLE_EQ(eval_kernel(TemperedPower{0.4, 0.5, 1.0}, 4, 10), 0.4 * std::exp(-0.4) * 0.5);
    EXPECT_DOUBLE_EQ(eval_kernel(Exponential{0.9, 2.0}, 5, 10), 0.9 * std::exp(-1.0));
    EXPECT_DOUBLE_EQ(eval_kernel(PurePower{0.4, 0.5}, 9, 100), 0.4 / 3.0);
    EXPECT_DOUBLE_EQ(eval_kernel(ShiftedExponential{0.2, 0.3}, 1, 5), 0.2 + 0.3 * std::exp(-1.0));
    EXPECT_NEAR(eval_kernel(ShiftedPower{0.2, 0.3, 0.5}, 4, 5), 0.35, 1e-15);
}

TEST(Kernel, AlphaAndNames) {
    EXPECT_EQ(kernel_alpha(Exponential{0.5, 1.0}), 1.0);
    EXPECT_EQ(kernel_alpha(PurePower{0.4, 0.3}), 0.3);
    EXPECT_EQ(kernel_name(TemperedPower{0.4, 0.5, 1.0}), "tempered_power");
    EXPECT_EQ(kernel_name(ShiftedPower{0.2, 0.3, 0.5}), "shifted_power");
}

TEST(Kernel, DomainErrors) {
    EXPECT_FALSE(kernel_domain_error(TemperedPower{0.5, 0.5, 1.0}).has_value());
    EXPECT_TRUE(kernel_domain_error(TemperedPower{0.8, 0.5, 1.0}).has_value());
    EXPECT_TRUE(kernel_domain_error(TemperedPower{0.5, 1.2, 1.0}).has_value());
    EXPECT_TRUE(kernel_domain_error(TemperedPower{0.5, 1.0, 0.0}).has_value());
    EXPECT_FALSE(kernel_domain_error(TemperedPower{0.5, 0.5, -1.0}, 0.25).has_value());
    EXPECT_TRUE(kernel_domain_error(TemperedPower{0.5, 0.5, -1.0}, 1.0).has_value());
    EXPECT_TRUE(kernel_domain_error(Exponential{1.2, 1.0}).has_value());
    EXPECT_TRUE(kernel_domain_error(Exponential{0.5, 0.0}).has_value());
    EXPECT_TRUE(kernel_domain_error(PurePower{0.4, 1.0}).has_value());
    EXPECT_TRUE(kernel_domain_error(ShiftedExponential{1.0, 0.1}).has_value());
    EXPECT_THROW(validate_kernel(PurePower{-0.1, 0.5}), InvalidKernel);
    EXPECT_THROW(eval_kernel(PurePower{0.4, 0.5}, 0, 10), DomainError);
}

TEST(Kernel, AssumptionHoldsInsideDomain) {
    for (const KernelSpec& k : {KernelSpec(TemperedPower{0.4, 0.5, 1.0}), KernelSpec(PurePower{0.4, 0.5}),
                                KernelSpec(Exponential{0.9, 1.0}), KernelSpec(ShiftedExponential{0.2, 0.3}),
                                KernelSpec(ShiftedPower{0.2, 0.3, 0.5})}) {
        const AssumptionReport r = check_assumption(k, 50, 2000);
        EXPECT_TRUE(r.pass()) << describe_kernel(k);
        EXPECT_GT(r.f2, r.f1 * r.f1);
    }
}

TEST(Kernel, ExponentialWithUnitConstantFailsTwoPoint) {
    const AssumptionReport r = check_assumption(Exponential{1.0, 1.0}, 10, 100);
    EXPECT_FALSE(r.two_point);
    EXPECT_FALSE(r.pass());
}

TEST(Kernel, DefaultCheckLengthCoversWindow) {
    EXPECT_GE(default_check_length(100, 2.0), 200);
}
