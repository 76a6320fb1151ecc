//! The cosimplicial simplicial categories behind the nerve functors.

pub mod delta_n;
pub mod free_models;
pub mod spheres;

pub use delta_n::{
    cosimplicial_action, delta_n, delta_n_of_subcomplex, horn_image, ind_generators, DeltaN, DeltaNSub,
    HornImage, HornImageKind, IndGenerator,
};
pub use free_models::{pi_map, tau, tau_vertex, Family, FreeModel, ModelKind};
pub use spheres::{circle, disc_model, sphere_model, MonoidModel};
