//! Session language, command execution and JSON reports.

pub mod ast;
pub mod error;
pub mod exec;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod selftest;
