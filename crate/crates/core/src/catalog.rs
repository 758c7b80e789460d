//! Every check the engine can run, with the formula it verifies.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Contact,
    Submersion,
    Oneill,
    Decomposition,
    Characterization,
    Umbilical,
    Geodesic,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub group: Group,
    pub anchor: &'static str,
    pub summary: &'static str,
}

macro_rules! checks {
    ($( $id:literal, $group:ident, $anchor:literal, $summary:literal; )*) => {
        pub const CHECKS: &[CheckInfo] = &[
            $( CheckInfo { id: $id, group: Group::$group, anchor: $anchor, summary: $summary }, )*
        ];
    };
}

checks! {
    // almost contact / contact metric / Sasakian
    "contact.phi_squared", Contact, "φ²=−I+η⊗ξ", "phi squared equals -I + eta (x) xi";
    "contact.eta_xi", Contact, "η(ξ)=1", "eta(xi) = 1";
    "contact.phi_xi", Contact, "φξ=0", "phi annihilates xi";
    "contact.eta_phi", Contact, "η∘φ=0", "eta vanishes on the image of phi";
    "contact.metric_compatible", Contact, "g_M(φX,φY)=g_M(X,Y)−η(X)η(Y)", "compatibility of g with phi";
    "contact.fundamental_form", Contact, "Φ(X,Y)=dη(X,Y)", "fundamental 2-form against d eta, best scale in {1, 1/2, 2}";
    "contact.normality", Contact, "[φ,φ]+2dη⊗ξ=0", "Nijenhuis tensor plus 2 d eta (x) xi vanishes";
    "sasakian.nabla_phi", Contact, "(∇_X φ)Y = g_M(X,Y)ξ − η(Y)X", "covariant derivative of phi";
    "sasakian.nabla_xi", Contact, "∇_X ξ = −φX", "covariant derivative of xi";

    // submersion
    "submersion.rank", Submersion, "rank π* = m₂", "Jacobian has maximal rank";
    "submersion.split", Submersion, "TM₁ = ker π* ⊕ (ker π*)⊥", "projectors idempotent, complementary, orthogonal; J kills vertical";
    "submersion.riemannian", Submersion, "g₂(π*X₁, π*X₂)=g₁(X₁,X₂)", "pi_* is an isometry on horizontal vectors";
    "submersion.xi_horizontal", Submersion, "ξ ⊥ ker π*", "xi is normal to the fibres";
    "oneill.t_vertical_slot", Oneill, "𝒯_E = 𝒯_{𝒱E}", "T vanishes for a horizontal first slot";
    "oneill.a_horizontal_slot", Oneill, "𝒜_E = 𝒜_{ℋE}", "A vanishes for a vertical first slot";
    "oneill.t_symmetric", Oneill, "𝒯_UV=𝒯_VU", "T symmetric on vertical pairs";
    "oneill.a_alternating", Oneill, "𝒜_XY=−𝒜_YX", "A alternating on horizontal pairs";
    "oneill.a_half_bracket", Oneill, "𝒜_XY=½𝒱[X,Y]", "A equals half the vertical bracket";
    "fundamental.vv", Oneill, "∇_V W = 𝒯_V W + ∇̂_V W", "vertical-vertical splitting";
    "fundamental.vh", Oneill, "∇_V X = 𝒯_V X + ℋ∇_V X", "vertical-horizontal splitting";
    "fundamental.hv", Oneill, "∇_X V = 𝒱∇_X V + 𝒜_X V", "horizontal-vertical splitting";
    "fundamental.hh", Oneill, "∇_X Y = 𝒜_X Y + ℋ∇_X Y", "horizontal-horizontal splitting";
    "fundamental.basic_a", Oneill, "ℋ(∇_V X) = 𝒜_X V", "A against the horizontal derivative of a basic field";
    "fundamental.basic_projectable", Oneill, "π*(ℋ∇_X Y) = ∇^{M₂}_{π*X} π*Y", "horizontal derivative of basic fields projects";
    "sff.symmetric", Geodesic, "(∇π*)(X,Y) = (∇π*)(Y,X)", "second fundamental form of the map is symmetric";

    // decompositions and slant structure
    "slant.operator", Decomposition, "φ²W = −cos²θ W", "phi-hat squared acts as -cos^2(theta) on D2";
    "slant.angle_constancy", Decomposition, "θ(U) constant for U ∈ D₂", "angle between phi U and D2 constant, equal to spectral theta";
    "slant.cos_metric", Decomposition, "g₁(φW₁,φW₂) = cos²θ g₁(W₁,W₂)", "phi-hat scales the metric on D2 by cos^2";
    "slant.sin_metric", Decomposition, "g₁(ωW₁,ωW₂) = sin²θ g₁(W₁,W₂)", "omega scales the metric on D2 by sin^2";
    "decomp.phi_hat_d1", Decomposition, "φD₁ = D₁", "phi-hat preserves D1";
    "decomp.omega_d1", Decomposition, "ωD₁ = 0", "omega vanishes on D1";
    "decomp.phi_hat_d2", Decomposition, "φD₂ ⊂ D₂", "phi-hat maps D2 into D2";
    "decomp.b_horizontal", Decomposition, "ℬ(ker π*)⊥ = D₂", "B maps the horizontal space onto D2";
    "decomp.mu_invariant", Decomposition, "(ker π*)⊥ = ωD₂ ⊕ μ", "mu is phi-invariant and contains xi";
    "decomp.nabla_xi_vertical", Decomposition, "𝒯_{U₁}ξ = φU₁", "vertical part of nabla_U xi against -/+ phi-hat U (matching sign)";
    "decomp.nabla_xi_vertical.printed_sign", Decomposition, "𝒯_{U₁}ξ = φU₁", "vertical part of nabla_U xi against +phi-hat U";
    "decomp.nabla_xi_horizontal", Decomposition, "∇̂_{U₁}ξ = −ωU₁", "horizontal part of nabla_U xi against -/+ omega U (matching sign)";
    "decomp.nabla_xi_horizontal.printed_sign", Decomposition, "∇̂_{U₁}ξ = −ωU₁", "horizontal part of nabla_U xi against -omega U";
    "decomp.phi_hat_skew", Decomposition, "g₁(φU₁,V₁) = −g₁(U₁,φV₁)", "phi-hat is skew on the vertical space";
    "decomp.omega_b_adjoint", Decomposition, "g₁(ωU₁,X) = −g₁(U₁,ℬX)", "omega and -B are adjoint";
    "square.vv.printed", Decomposition, "φ² + ℬω = −id", "vertical part of phi^2 on vertical vectors, printed form";
    "square.vv.corrected", Decomposition, "φ² + ℬω = −id", "vertical part of phi^2 on vertical vectors, with the eta (x) xi term";
    "square.hh.printed", Decomposition, "𝒞² + ωℬ = −id", "horizontal part of phi^2 on horizontal vectors, printed form";
    "square.hh.corrected", Decomposition, "𝒞² + ωℬ = −id", "horizontal part of phi^2 on horizontal vectors, with the eta (x) xi term";
    "square.vh.printed", Decomposition, "ωφ + 𝒞ω = 0", "horizontal part of phi^2 on vertical vectors, printed form";
    "square.vh.corrected", Decomposition, "ωφ + 𝒞ω = 0", "horizontal part of phi^2 on vertical vectors, with the eta (x) xi term";
    "square.hv.printed", Decomposition, "ℬ𝒞 + φℬ = 0", "vertical part of phi^2 on horizontal vectors, printed form";
    "square.hv.corrected", Decomposition, "ℬ𝒞 + φℬ = 0", "vertical part of phi^2 on horizontal vectors, with the eta (x) xi term";
    "structure.vv_vertical", Decomposition, "ℬ𝒯_UV + φ∇̂_UV = ∇̂_U φV + 𝒯_U ωV", "vertical part of nabla phi on vertical pairs";
    "structure.vv_horizontal", Decomposition, "g₁(U,V)ξ + 𝒞𝒯_UV + ω∇̂_UV = 𝒯_UφV + ℋ∇_UωV", "horizontal part of nabla phi on vertical pairs";
    "structure.vh_vertical", Decomposition, "φ𝒯_UX + ℬ∇_UX − η(X)U = ∇̂_UℬX + 𝒯_U𝒞X", "vertical part of nabla phi, vertical direction, horizontal field";
    "structure.vh_horizontal", Decomposition, "ω𝒯_UX + 𝒞∇_UX = 𝒯_UℬX + ℋ∇_U𝒞X", "horizontal part of nabla phi, vertical direction, horizontal field";
    "structure.hh_horizontal", Decomposition, "g₁(X,Y)ξ − ω𝒜_XY + 𝒞ℋ∇_XY = 𝒜_XℬY + ∇_X𝒞Y + η(Y)X", "horizontal part of nabla phi on horizontal pairs, sign of the omega A term re-derived";
    "structure.hh_horizontal.printed", Decomposition, "g₁(X,Y)ξ − ω𝒜_XY + 𝒞ℋ∇_XY = 𝒜_XℬY + ∇_X𝒞Y + η(Y)X", "horizontal part of nabla phi on horizontal pairs, printed sign";
    "structure.hh_vertical", Decomposition, "φ𝒜_XY + ℬℋ∇_XY = 𝒱∇_XℬY + 𝒜_X𝒞Y", "vertical part of nabla phi on horizontal pairs";

    // integrability by brackets
    "integrable.vertical", Characterization, "[U,V] ∈ Γ(ker π*)", "bracket of vertical fields stays vertical";
    "integrable.d1", Characterization, "[U,V] ∈ Γ(D₁)", "bracket of D1 fields stays in D1";
    "integrable.d2", Characterization, "[Z,W] ∈ Γ(D₂)", "bracket of D2 fields stays in D2";
    "integrable.horizontal", Characterization, "[X,Y] ∈ Γ((ker π*)⊥)", "bracket of horizontal fields stays horizontal";

    // characterization conditions, each paired with a direct geometric check
    "char.d1_integrable", Characterization, "(∇π*)(U,φV)−(∇π*)(V,φU) ∉ Γ(π*μ)", "D1 integrability condition";
    "char.d2_integrable", Characterization, "g₂(π*ωW,(∇π*)(Z,φU))+g₂(π*ωZ,(∇π*)(W,φU)) = g₁(φW,∇̂_ZφU)+g₁(φZ,∇̂_WφU)", "D2 integrability condition";
    "char.d1_parallel.d2_part", Characterization, "g₂((∇π*)(U,φV), π*ωZ) = g₁(𝒯_U ωφZ, V)", "D1 parallel, D2 component";
    "char.d1_parallel.horizontal_part", Characterization, "−g₂((∇π*)(U,φV),π*𝒞X) = g₁(V,∇̂_UφℬX+𝒯_UωℬX)+g₁(V,φU)η(X)", "D1 parallel, horizontal component";
    "char.d2_parallel.d1_part", Characterization, "g₂(π*ωW, (∇π*)(Z,φU)) = g₁(φW, ∇̂_Z φU)", "D2 parallel, D1 component";
    "char.d2_parallel.horizontal_part", Characterization, "g₂((∇π*)(Z,ωW),π*X)−g₂((∇π*)(Z,ωφW),π*X) = g₁(𝒯_ZωW,ℬX)+g₁(W,φZ)η(X)", "D2 parallel, horizontal component";
    "char.horizontal_integrable.d1_part", Characterization, "g₂((∇π*)(Y,φV),π*X)+g₂((∇π*)(X,φV),π*X) = g₁(φV,𝒱(∇_XℬY+∇_YℬX))", "horizontal integrability, D1 component";
    "char.horizontal_integrable.d2_part", Characterization, "g₂((∇π*)(X,𝒞Y)−(∇π*)(Y,𝒞X),π*ωW) = g₁(𝒜_XℬY+𝒜_YℬX,ωW)+η(Y)g₁(X,ωW)−η(X)g₁(Y,ωW)", "horizontal integrability, D2 component";
    "char.horizontal_parallel.d1_part", Characterization, "g₁(V,𝒱∇_XφℬY+𝒜_XωℬY) = g₂(π*𝒞Y,(∇π*)(X,φV))", "horizontal parallel, D1 component";
    "char.horizontal_parallel.d2_part", Characterization, "g₁(𝒜_XωW,ℬY)+η(Y)g₁(X,ωW) = g₂((∇π*)(X,Y),π*ωφW)−g₂((∇π*)(X,𝒞Y),π*ωW)", "horizontal parallel, D2 component";
    "char.vertical_parallel", Characterization, "g₁(ωV, 𝒯_U ℬX) + g₁(V,φU)η(X) = g₂((∇π*)(U,𝒞X),π*ωV)−g₂((∇π*)(U,X),π*ωφV)", "vertical distribution parallel";
    "char.geodesic_sufficient", Characterization, "−∇^π_X π*Z₂ = π*(𝒞(ℋ∇_X ωZ₁ −𝒜_XφZ₁+𝒜_XℬZ₂+ℋ∇_X𝒞Z₂)+ω(𝒜_XωZ₁−𝒱∇_XφZ₁+𝒱∇_XℬZ₂+𝒜_X𝒞Z₂)−η(Z₂)𝒞X−η(X)η(Z₂)ξ−g₁(Z₂,𝒞X)ξ)", "sufficient condition for a totally geodesic map";
    "char.geodesic.d1_pairs", Characterization, "g₁(∇̂_{U₁}φV₁, ℬZ) = g₁(𝒯_{U₁}𝒞Z,φV₁)−g₁(V₁,φU₁)η(Z)", "totally geodesic, D1 pairs";
    "char.geodesic.d2_pairs", Characterization, "g₂((∇π*)(U₂,ωφV₂),π*Z)+g₂((∇π*)(U₂,ωV₂),π*Z) = g₁(𝒯_{U₂}ωV₂,ℬZ)+g₁(V₂,φU₂)η(Z)", "totally geodesic, D2 pairs";
    "char.geodesic.mixed", Characterization, "g₂((∇π*)(U,𝒞X),π*𝒞Y)−g₂((∇π*)(U,ωℬX),π*Y) = g₁(𝒯_UφℬX,Y)−g₁(𝒯_U𝒞X,ℬY)+η(X)g₁(𝒬U,φY)−η(Y)[Uη(X)+g₁(X,ωU)]", "totally geodesic, vertical-horizontal pairs";
    "char.geodesic_vector.vertical", Characterization, "𝒞(𝒯_UφV + ∇_U ωV) + ω(∇̂_UφV + 𝒯_UωV) + g₁(𝒫V,φU)ξ = 0", "totally geodesic, vertical pairs (vector form)";
    "char.geodesic_vector.mixed", Characterization, "𝒞(𝒜_XφU+ℋ∇_XωU)+ω(𝒜_XωU+𝒱∇_XφU)+g₁(𝒬U,ℬX)ξ = 0", "totally geodesic, horizontal-vertical pairs (vector form)";
    "char.geodesic_vector.d1_d2", Characterization, "𝒞(𝒯_{U₁}φV₁+ℋ∇_{U₁}φV₁)+ω(𝒯_{U₁}ωV₁+𝒱∇_{U₁}φV₁) = 0", "totally geodesic, D1-D2 pairs (vector form)";

    // umbilical fibres and geodesic maps
    "umbilical.fibres", Umbilical, "𝒯_V W = g₁(V,W)H", "fibres totally umbilical";
    "umbilical.mean_curvature", Umbilical, "H ∈ Γ(ωD₂)", "mean curvature of umbilical fibres lies in omega D2";
    "geodesic.map", Geodesic, "∇π* = 0", "second fundamental form of the map vanishes";
    "geodesic.vertical_pairs", Geodesic, "(∇π*)(U,V) = −π*(𝒯_UV)", "second fundamental form on vertical pairs";
}

pub fn lookup(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Anchor formula for a check id. Unknown ids map to an empty anchor; the
/// catalog test guarantees every id the engine emits is listed.
pub fn anchor(id: &str) -> &'static str {
    lookup(id).map(|c| c.anchor).unwrap_or("")
}
