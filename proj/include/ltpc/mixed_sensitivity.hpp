#pragma once

#include "ltpc/ltp_system.hpp"
#include "ltpc/rde.hpp"
#include "ltpc/synthesis.hpp"
#include "ltpc/time_grid.hpp"
#include "ltpc/weights.hpp"

namespace ltpc {

/// Weighted synthesis data built around a physical plant:
///  - the filter RDE runs on the plant state block only, with scaled output
///    map V_e^-1 C and scaled input map B V_d (`scaled_plant`);
///  - the controller RDE runs on the augmented state (x, x_We, x_Wu), with
///    performance outputs z1 (W_e on the scaled error) and z2 (W_u on the
///    V_u^-1-scaled control) and control channel [B; 0; B_Wu V_u^-1].
struct WeightedDesignPlant {
    LtpSystem physical_plant;
    LtpSystem scaled_plant;
    WeightBank we, wu;
    ScalingSet scalings;
    WeightedPartition partition;
};

WeightedDesignPlant build_weighted_design_plant(const LtpSystem& plant, const WeightBank& we,
                                                const WeightBank& wu, const ScalingSet& scalings);

/// Augmented full-information plant for the controller RDE, given the filter
/// solution Y of the scaled plant (filter gain L = -Y (V_e^-1 C)').
FullInformationPlant weighted_full_information_plant(const WeightedDesignPlant& wdp,
                                                     const PeriodicRdeSolution& Y,
                                                     const TimeGrid& grid);

/// Filter gain of the scaled plant, L = -Y C_s' with C_s = V_e^-1 C.
PeriodicMatrix weighted_filter_gain(const WeightedDesignPlant& wdp, const PeriodicRdeSolution& Y,
                                    const TimeGrid& grid);

/// Controller realization of the weighted synthesis:
///   A_K = blkdiag(A + L V_e^-1 C, A_We, A_Wu) + [B; 0; B_Wu V_u^-1] F
///   B_K = [L V_e^-1; B_We V_e^-1; 0],  C_K = F,  D_K = 0.
/// Input is the physical error e, output the physical control u.
StructuredController assemble_weighted_controller(const WeightedDesignPlant& wdp,
                                                  const PeriodicMatrix& L, const PeriodicMatrix& F,
                                                  double gamma_achieved, double gamma_optimal);

/// Closed performance loop (w1, w2) -> (z1, z2) of Fig-style weighted mixed
/// sensitivity: r = V_e w1, d = V_d w2 at the plant input, z1 = W_e V_e^-1 e,
/// z2 = W_u V_u^-1 u. The controller's internal weight states double as the
/// performance weight states (identical dynamics and zero initial state).
LtpRealization build_weighted_closed_loop(const LtpSystem& plant, const StructuredController& K);

} // namespace ltpc
