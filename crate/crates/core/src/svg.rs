//! Interactive SVG post-processing.
//!
//! Interaction is encoded in `class` attributes. Fields are separated by
//! `___`:
//!
//! ```text
//! init___<property>___<value>
//! <event>___<source element>___<property>___<value>
//! ```
//!
//! where `<event>` is one of `click`, `mouseenter`, `mouseleave` or
//! `contextmenu` (`clicked` is accepted for `click`). Styles are set on the
//! `<g>` element the layout tool writes for each node, edge and cluster.

use std::fmt;

use crate::error::{Error, Result};

/// The browser runtime embedded into interactive SVGs.
pub const RUNTIME_SCRIPT: &str = include_str!("../assets/svg-runtime.js");

pub const MARKER: &str = "<!--factgraph-runtime-->";

const SEP: &str = "___";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Click,
    MouseEnter,
    MouseLeave,
    ContextMenu,
}

impl Event {
    pub const ALL: [Event; 4] = [
        Event::Click,
        Event::MouseEnter,
        Event::MouseLeave,
        Event::ContextMenu,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Event::Click => "click",
            Event::MouseEnter => "mouseenter",
            Event::MouseLeave => "mouseleave",
            Event::ContextMenu => "contextmenu",
        }
    }

    pub fn parse(s: &str) -> Option<Event> {
        match s {
            "click" | "clicked" => Some(Event::Click),
            "mouseenter" => Some(Event::MouseEnter),
            "mouseleave" => Some(Event::MouseLeave),
            "contextmenu" => Some(Event::ContextMenu),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InteractionClass {
    Init {
        property: String,
        value: String,
    },
    Event {
        event: Event,
        source: String,
        property: String,
        value: String,
    },
}

impl InteractionClass {
    pub fn serialize(&self) -> String {
        match self {
            InteractionClass::Init { property, value } => ["init", property, value].join(SEP),
            InteractionClass::Event {
                event,
                source,
                property,
                value,
            } => [event.as_str(), source, property, value].join(SEP),
        }
    }
}

impl fmt::Display for InteractionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn parse_token(token: &str) -> Result<InteractionClass> {
    let fields: Vec<&str> = token.split(SEP).collect();
    let bad = |why: &str| Error::Class(format!("{why} in class token `{token}`"));
    match fields.as_slice() {
        ["init", property, value] => Ok(InteractionClass::Init {
            property: property.to_string(),
            value: value.to_string(),
        }),
        ["init", ..] => Err(bad("expected 3 fields for init")),
        [event, source, property, value] => {
            let event = Event::parse(event).ok_or_else(|| bad("unknown event"))?;
            Ok(InteractionClass::Event {
                event,
                source: source.to_string(),
                property: property.to_string(),
                value: value.to_string(),
            })
        }
        _ => Err(bad("expected 4 fields")),
    }
}

/// Parses the interaction tokens of a whitespace-separated class list.
/// Tokens without `___` are ignored.
pub fn parse_class_string(s: &str) -> Result<Vec<InteractionClass>> {
    s.split_whitespace()
        .filter(|t| t.contains(SEP))
        .map(parse_token)
        .collect()
}

/// Values of every `class="..."` attribute in `svg`.
fn class_values(svg: &str) -> impl Iterator<Item = &str> {
    svg.match_indices("class=").filter_map(move |(i, m)| {
        let rest = &svg[i + m.len()..];
        let quote = rest.chars().next().filter(|c| *c == '"' || *c == '\'')?;
        let body = &rest[1..];
        body.find(quote).map(|end| &body[..end])
    })
}

pub fn is_interactive(svg: &str) -> bool {
    class_values(svg).any(|v| v.contains(SEP))
}

/// Embeds `script` before the closing `</svg>` when some element carries an
/// interaction class. Non-interactive input is returned unchanged, as is
/// input that already carries the runtime.
pub fn inject_runtime(svg: &str, script: &str) -> Result<String> {
    let close = svg
        .rfind("</svg>")
        .ok_or_else(|| Error::Svg("input has no closing </svg> tag".into()))?;
    if svg.contains(MARKER) || !is_interactive(svg) {
        return Ok(svg.to_string());
    }
    // `]]>` would end the CDATA section early.
    let body = script.replace("]]>", "]]]]><![CDATA[>");
    let mut out = String::with_capacity(svg.len() + body.len() + 64);
    out.push_str(&svg[..close]);
    out.push_str(MARKER);
    out.push_str("\n<script type=\"text/javascript\"><![CDATA[\n");
    out.push_str(&body);
    out.push_str("\n]]></script>\n");
    out.push_str(&svg[close..]);
    Ok(out)
}
