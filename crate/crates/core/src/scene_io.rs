//! Line-delimited scenario file format.
//!
//! ```text
//! scenario <label> <frame_rate> <hand_id> <ground_id>
//! cube <id> <appearance>
//! frame <index> <time>
//! state <id> <status> <cx> <cy> <cz> <ex> <ey> <ez>
//! ```
//!
//! Numbers are SI meters/seconds with `.` as decimal separator. Every
//! frame carries one `state` line per declared cube.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{EsecError, Result};
use crate::scalar::Scalar;
use crate::scene::{Cube, CubeStatus, Frame, Scenario, Vec3};

fn parse_err(line: usize, message: impl Into<String>) -> EsecError {
    EsecError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: Scalar>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse::<T>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn save_scenario<T: Scalar, W: Write>(scenario: &Scenario<T>, mut out: W) -> Result<()> {
    writeln!(
        out,
        "scenario {} {} {} {}",
        scenario.label, scenario.frame_rate, scenario.hand_id, scenario.ground_id
    )?;
    if let Some(first) = scenario.frames.first() {
        for cube in &first.cubes {
            let appearance = if cube.appearance.is_empty() {
                "plain"
            } else {
                &cube.appearance
            };
            writeln!(out, "cube {} {}", cube.id, appearance)?;
        }
    }
    for frame in &scenario.frames {
        writeln!(out, "frame {} {}", frame.index, frame.time)?;
        for cube in &frame.cubes {
            writeln!(
                out,
                "state {} {} {} {} {} {} {} {}",
                cube.id,
                cube.status.as_str(),
                cube.center.x,
                cube.center.y,
                cube.center.z,
                cube.extents.x,
                cube.extents.y,
                cube.extents.z
            )?;
        }
    }
    Ok(())
}

pub fn load_scenario<T: Scalar, R: Read>(input: R) -> Result<Scenario<T>> {
    let reader = BufReader::new(input);
    let mut label = None;
    let mut frame_rate = T::zero();
    let mut hand_id = String::new();
    let mut ground_id = String::new();
    let mut declared: Vec<(String, String)> = Vec::new();
    let mut frames: Vec<Frame<T>> = Vec::new();
    let mut current: Option<Frame<T>> = None;

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();
        match tag {
            "scenario" => {
                if label.is_some() {
                    return Err(parse_err(lineno, "duplicate scenario header"));
                }
                if rest.len() != 4 {
                    return Err(parse_err(
                        lineno,
                        "header must be `scenario <label> <frame_rate> <hand_id> <ground_id>`",
                    ));
                }
                label = Some(rest[0].to_string());
                frame_rate = parse_num(rest[1], lineno, "frame rate")?;
                if frame_rate <= T::zero() {
                    return Err(parse_err(lineno, "frame rate must be positive"));
                }
                hand_id = rest[2].to_string();
                ground_id = rest[3].to_string();
            }
            "cube" => {
                if label.is_none() {
                    return Err(parse_err(lineno, "cube declaration before header"));
                }
                if rest.len() != 2 {
                    return Err(parse_err(lineno, "expected `cube <id> <appearance>`"));
                }
                if declared.iter().any(|(id, _)| id == rest[0]) {
                    return Err(parse_err(lineno, format!("duplicate cube id `{}`", rest[0])));
                }
                declared.push((rest[0].to_string(), rest[1].to_string()));
            }
            "frame" => {
                if label.is_none() {
                    return Err(parse_err(lineno, "frame before header"));
                }
                if rest.len() != 2 {
                    return Err(parse_err(lineno, "expected `frame <index> <time>`"));
                }
                if let Some(done) = current.take() {
                    finish_frame(done, &declared, &mut frames, lineno)?;
                }
                let index: usize = rest[0]
                    .parse()
                    .map_err(|_| parse_err(lineno, "invalid frame index"))?;
                let time = parse_num(rest[1], lineno, "frame time")?;
                if let Some(prev) = frames.last() {
                    if time <= prev.time {
                        return Err(parse_err(
                            lineno,
                            format!("frame {index}: times must be strictly increasing"),
                        ));
                    }
                }
                current = Some(Frame {
                    index,
                    time,
                    cubes: Vec::with_capacity(declared.len()),
                });
            }
            "state" => {
                let frame = current
                    .as_mut()
                    .ok_or_else(|| parse_err(lineno, "state line outside a frame"))?;
                if rest.len() != 8 {
                    return Err(parse_err(
                        lineno,
                        "expected `state <id> <status> <cx> <cy> <cz> <ex> <ey> <ez>`",
                    ));
                }
                let id = rest[0];
                let declared_entry = declared
                    .iter()
                    .find(|(d, _)| d == id)
                    .ok_or_else(|| parse_err(lineno, format!("unknown cube id `{id}`")))?;
                let status = CubeStatus::parse(rest[1])
                    .ok_or_else(|| parse_err(lineno, format!("unknown status `{}`", rest[1])))?;
                let nums: Vec<T> = rest[2..]
                    .iter()
                    .map(|t| parse_num(t, lineno, "coordinate"))
                    .collect::<Result<_>>()?;
                frame.cubes.push(Cube {
                    id: id.to_string(),
                    appearance: declared_entry.1.clone(),
                    center: Vec3::new(nums[0], nums[1], nums[2]),
                    extents: Vec3::new(nums[3], nums[4], nums[5]),
                    status,
                });
            }
            other => return Err(parse_err(lineno, format!("unknown record `{other}`"))),
        }
    }
    if let Some(done) = current.take() {
        finish_frame(done, &declared, &mut frames, 0)?;
    }

    let scenario = Scenario {
        label: label.ok_or_else(|| parse_err(1, "missing scenario header"))?,
        frame_rate,
        frames,
        hand_id,
        ground_id,
    };
    scenario.validate()?;
    Ok(scenario)
}

fn finish_frame<T: Scalar>(
    frame: Frame<T>,
    declared: &[(String, String)],
    frames: &mut Vec<Frame<T>>,
    lineno: usize,
) -> Result<()> {
    if frame.cubes.len() != declared.len() {
        return Err(parse_err(
            lineno,
            format!(
                "frame {} has {} state lines, {} cubes declared",
                frame.index,
                frame.cubes.len(),
                declared.len()
            ),
        ));
    }
    // Reorder states into declaration order so frames compare cleanly.
    let mut ordered = Vec::with_capacity(declared.len());
    for (id, _) in declared {
        let cube = frame
            .cubes
            .iter()
            .find(|c| &c.id == id)
            .cloned()
            .ok_or_else(|| parse_err(lineno, format!("frame {} misses cube `{id}`", frame.index)))?;
        ordered.push(cube);
    }
    frames.push(Frame {
        index: frame.index,
        time: frame.time,
        cubes: ordered,
    });
    Ok(())
}
