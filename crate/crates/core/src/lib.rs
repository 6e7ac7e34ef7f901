//! Numerical machinery for pose-driven video performance cloning.
//!
//! * [`pose`]: confidence volumes, 18-joint skeletons and the translation-invariant
//!   limb descriptor.
//! * [`normalize`]: per-video similarity alignment and per-channel standardization.
//! * [`metrics`]: pose-to-pose and pose-to-sequence limb distances, coverage
//!   reports and loss aggregation.
//! * [`temporal`]: backward warping, limb weight maps, the temporal-coherence
//!   loss, RGB MSE and the self-reenactment split.
//! * [`io`]: PSQ1, skeleton JSON, Middlebury `.flo` and PPM files.
//!
//! Batch loops run on rayon when the `parallel` feature is on (the default);
//! see [`Execution`].

pub mod error;
pub mod exec;
pub mod io;
pub mod metrics;
pub mod normalize;
pub mod pose;
pub mod temporal;

pub use error::{Error, Result};
pub use exec::{configure_threads_from_env, Execution};
pub use metrics::{
    aggregate_losses, coverage_report, per_limb_distances, pose_distance, pose_to_sequence,
    CoverageReport, DescriptorSequence, LossComponents, LossWeights,
};
pub use normalize::{
    align_sequence, standardize_channels, ChannelStats, SimilarityTransform, SkeletonSequence,
};
pub use pose::{
    descriptor, extract_skeleton, render_pose, ConfidenceVolume, Joint, LimbSet, PoseDescriptor,
    Skeleton, JOINT_COUNT, LIMB_COUNT,
};
pub use temporal::{
    limb_weight_map, mse, pack_pose_window, reenact_split, tc_loss, warp, FlowField, Frame,
    PoseWindow, WeightMap,
};
