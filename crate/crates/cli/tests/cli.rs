use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use poseclone_core::io::{flo, ppm, psq, skeleton_json};
use poseclone_core::pose::{joint, Joint, Skeleton, JOINT_COUNT};
use poseclone_core::temporal::{FlowField, Frame};
use poseclone_core::SkeletonSequence;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poseclone"))
        .args(args)
        .env("POSECLONE_THREADS", "2")
        .output()
        .expect("failed to launch poseclone")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn body(cx: f64, cy: f64, arm_deg: f64) -> Skeleton {
    let mut sk = Skeleton::empty();
    let at = |x: f64, y: f64| Some(Joint::new(x.round(), y.round(), 1.0));
    sk.set_joint(joint::NECK, at(cx, cy - 40.0));
    let a = arm_deg.to_radians();
    for (side, sh, el, wr) in [
        (-1.0, joint::R_SHOULDER, joint::R_ELBOW, joint::R_WRIST),
        (1.0, joint::L_SHOULDER, joint::L_ELBOW, joint::L_WRIST),
    ] {
        let (sx, sy) = (cx + side * 20.0, cy - 40.0);
        sk.set_joint(sh, at(sx, sy));
        sk.set_joint(el, at(sx + side * 40.0 * a.sin(), sy + 40.0 * a.cos()));
        sk.set_joint(wr, at(sx + side * 80.0 * a.sin(), sy + 80.0 * a.cos()));
    }
    for (side, hip, knee, ankle) in [
        (-1.0, joint::R_HIP, joint::R_KNEE, joint::R_ANKLE),
        (1.0, joint::L_HIP, joint::L_KNEE, joint::L_ANKLE),
    ] {
        sk.set_joint(hip, at(cx + side * 15.0, cy));
        sk.set_joint(knee, at(cx + side * 15.0, cy + 40.0));
        sk.set_joint(ankle, at(cx + side * 15.0, cy + 80.0));
    }
    sk
}

fn write_skeletons(dir: &Path, name: &str, frames: Vec<Skeleton>, h: usize, w: usize) -> PathBuf {
    let p = dir.join(name);
    skeleton_json::save_skeletons(&p, &SkeletonSequence::new(frames, h, w).unwrap()).unwrap();
    p
}

#[test]
fn render_then_extract_recovers_joints() {
    let dir = tempfile::tempdir().unwrap();
    let sk = body(128.0, 120.0, 20.0);
    let input = write_skeletons(dir.path(), "s.json", vec![sk], 256, 256);
    let psq_path = dir.path().join("p.psq");
    let v = ok_json(&["render", s(&input), "--out", s(&psq_path)]);
    assert_eq!(v["frames"], 1);
    assert_eq!(v["sigma"], 6.0);
    let vols = psq::load_pose_sequence(&psq_path).unwrap();
    assert_eq!(vols.len(), 1);
    assert_eq!(vols[0].dims(), (JOINT_COUNT, 256, 256));

    let back = dir.path().join("back.json");
    ok_json(&["extract", s(&psq_path), "--out", s(&back)]);
    let seq = skeleton_json::load_skeletons(&back).unwrap();
    for j in 0..JOINT_COUNT {
        match sk.joint(j) {
            Some(want) => {
                let got = seq.frames[0].joint(j).unwrap();
                assert_eq!((got.x, got.y, got.confidence), (want.x, want.y, 1.0));
            }
            None => assert!(seq.frames[0].joint(j).is_none()),
        }
    }
}

#[test]
fn render_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.psq");
    assert_eq!(code(&["render", s(&dir.path().join("missing.json")), "--out", s(&out)]), 3);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"width\": 3").unwrap();
    let r = run(&["render", s(&bad), "--out", s(&out)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&r.stderr).is_empty());
    assert!(!out.exists());
}

#[test]
fn normalize_reports_transform_and_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let frames: Vec<_> = (0..4).map(|i| body(100.0 + 5.0 * i as f64, 130.0, 0.0)).collect();
    let input = write_skeletons(dir.path(), "s.json", frames, 256, 256);
    let out = dir.path().join("n.json");
    let t = ok_json(&["normalize", s(&input), "--target-hip-width", "60", "--out", s(&out)]);
    assert!((t["scale"].as_f64().unwrap() - 2.0).abs() < 1e-12);

    let again = dir.path().join("n2.json");
    let t2 = ok_json(&["normalize", s(&out), "--target-hip-width", "60", "--out", s(&again)]);
    assert!((t2["scale"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    for k in 0..2 {
        assert!(t2["translate"][k].as_f64().unwrap().abs() < 1e-9);
    }

    let mut nohip = body(100.0, 100.0, 0.0);
    nohip.set_joint(joint::R_HIP, None);
    let bad = write_skeletons(dir.path(), "nohip.json", vec![nohip], 256, 256);
    let r = run(&["normalize", s(&bad), "--target-hip-width", "60", "--out", s(&out)]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("unalignable"));
}

#[test]
fn coverage_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let reference: Vec<_> = (0..30)
        .map(|i| body(90.0 + i as f64, 120.0, (i % 7) as f64 - 3.0))
        .collect();
    let r = write_skeletons(dir.path(), "ref.json", reference.clone(), 256, 256);

    let v = ok_json(&["coverage", s(&r), s(&r)]);
    assert_eq!(v["mean_distance"], 0.0);
    assert_eq!(v["fraction_frames_with_any_flag"], 0.0);

    let d = write_skeletons(
        dir.path(),
        "drv.json",
        vec![reference[3], body(128.0, 128.0, 90.0)],
        256,
        256,
    );
    let (csv, json) = (dir.path().join("c.csv"), dir.path().join("c.json"));
    let v = ok_json(&["coverage", s(&d), s(&r), "--csv", s(&csv), "--json", s(&json)]);
    assert_eq!(v["frames"], 2);
    assert_eq!(v["fraction_frames_with_any_flag"], 0.5);
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(from_file, v);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("frame,limb,distance,nn_frame,flagged"));
    let flagged: Vec<(usize, usize)> = lines
        .filter(|l| l.ends_with(",true"))
        .map(|l| {
            let f: Vec<_> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(flagged, vec![(1, 1), (1, 2), (1, 4), (1, 5)]);

    let v = ok_json(&["coverage", s(&d), s(&r), "--gamma", "inf"]);
    assert_eq!(v["fraction_frames_with_any_flag"], 0.0);

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"width": 8, "height": 8, "frames": []}"#).unwrap();
    assert_eq!(code(&["coverage", s(&empty), s(&r)]), 2);
    assert_eq!(code(&["coverage", s(&d), s(&r), "--limbs", "1-2"]), 2);
}

fn base_image(h: usize, w: usize) -> Vec<f64> {
    (0..h * w * 3)
        .map(|i| {
            let (p, c) = (i / 3, i % 3);
            let (y, x) = (p / w, p % w);
            (((x * 7 + y * 3 + c * 50) % 200) as f64 + 20.0).min(255.0)
        })
        .collect()
}

fn crop(src: &[f64], src_w: usize, h: usize, x0: usize, w: usize) -> Frame {
    let mut d = Vec::with_capacity(h * w * 3);
    for y in 0..h {
        let start = (y * src_w + x0) * 3;
        d.extend_from_slice(&src[start..start + w * 3]);
    }
    Frame::new(h, w, d).unwrap()
}

#[test]
fn tc_loss_command() {
    let dir = tempfile::tempdir().unwrap();
    let (h, w) = (32, 32);
    let frames_dir = dir.path().join("frames");
    let flows_dir = dir.path().join("flows");
    std::fs::create_dir_all(&flows_dir).unwrap();
    let mut sk = Skeleton::empty();
    sk.set_joint(joint::NECK, Some(Joint::new(16.0, 4.0, 1.0)));
    sk.set_joint(joint::R_HIP, Some(Joint::new(16.0, 28.0, 1.0)));
    let skel = write_skeletons(dir.path(), "s.json", vec![sk; 3], h, w);

    // duplicated frames and zero flow
    let f = crop(&base_image(h, w + 2), w + 2, h, 1, w);
    ppm::save_frame_dir(&frames_dir, &[f.clone(), f.clone(), f.clone()]).unwrap();
    for i in 0..2 {
        flo::save_flo(&flows_dir.join(format!("{i:03}.flo")), &FlowField::constant(h, w, 0.0, 0.0).unwrap())
            .unwrap();
    }
    let v = ok_json(&["tc-loss", s(&frames_dir), s(&flows_dir), s(&skel), "--sigma-alpha", "4"]);
    assert_eq!(v["mean"], 0.0);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 2);

    // content moving right by one pixel per frame; backward flow is (-1, 0)
    let base = base_image(h, w + 2);
    let seq = [crop(&base, w + 2, h, 2, w), crop(&base, w + 2, h, 1, w), crop(&base, w + 2, h, 0, w)];
    ppm::save_frame_dir(&frames_dir, &seq).unwrap();
    for i in 0..2 {
        flo::save_flo(&flows_dir.join(format!("{i:03}.flo")), &FlowField::constant(h, w, -1.0, 0.0).unwrap())
            .unwrap();
    }
    let matched = ok_json(&["tc-loss", s(&frames_dir), s(&flows_dir), s(&skel), "--sigma-alpha", "4"]);
    let matched = matched["mean"].as_f64().unwrap();
    for i in 0..2 {
        flo::save_flo(&flows_dir.join(format!("{i:03}.flo")), &FlowField::constant(h, w, 0.0, 0.0).unwrap())
            .unwrap();
    }
    let unmatched = ok_json(&["tc-loss", s(&frames_dir), s(&flows_dir), s(&skel), "--sigma-alpha", "4"]);
    let unmatched = unmatched["mean"].as_f64().unwrap();
    assert!(matched < 0.05, "matched flow loss {matched}");
    assert!(unmatched > 20.0 * matched.max(1e-3), "{unmatched} vs {matched}");

    // forward-flow convention flips the sign
    for i in 0..2 {
        flo::save_flo(&flows_dir.join(format!("{i:03}.flo")), &FlowField::constant(h, w, 1.0, 0.0).unwrap())
            .unwrap();
    }
    let fwd = ok_json(&["tc-loss", s(&frames_dir), s(&flows_dir), s(&skel), "--sigma-alpha", "4", "--forward-flow"]);
    assert_eq!(fwd["mean"].as_f64().unwrap(), matched);

    std::fs::remove_file(flows_dir.join("001.flo")).unwrap();
    assert_eq!(code(&["tc-loss", s(&frames_dir), s(&flows_dir), s(&skel)]), 2);
}

#[test]
fn mse_and_split_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a: Vec<_> = (0..3).map(|k| Frame::filled(4, 5, 20.0 + k as f64).unwrap()).collect();
    let b: Vec<_> = (0..3).map(|k| Frame::filled(4, 5, 30.0 + k as f64).unwrap()).collect();
    let (da, db) = (dir.path().join("a"), dir.path().join("b"));
    ppm::save_frame_dir(&da, &a).unwrap();
    ppm::save_frame_dir(&db, &b).unwrap();
    assert_eq!(ok_json(&["mse", s(&da), s(&da)])["mse"], 0.0);
    assert_eq!(ok_json(&["mse", s(&da), s(&db)])["mse"], 100.0);

    let dc = dir.path().join("c");
    ppm::save_frame_dir(&dc, &a[..2]).unwrap();
    assert_eq!(code(&["mse", s(&da), s(&dc)]), 2);

    let v = ok_json(&["split", "--length", "3000"]);
    assert_eq!(v, serde_json::json!({"train": [0, 2000], "test": [2000, 3000]}));
    let v = ok_json(&["split", "--frames-dir", s(&da)]);
    assert_eq!(v, serde_json::json!({"train": [0, 2], "test": [2, 3]}));
    assert_eq!(code(&["split", "--length", "2"]), 2);
}
