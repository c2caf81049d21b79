#pragma once

#include <string>

#include "cct/source.hpp"

namespace cct {

// Lexical class of a terminal; these are the tt labels of the grammar.
enum class TerminalType {
    Keyword,
    Type,
    Identifier,
    Operator,
    Punctuation,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
};

const char* terminal_type_label(TerminalType t);

// Grammar node kinds; these are the pt labels a token can carry.
enum class NodeKind {
    TranslationUnit,
    FuncDefinition,
    FuncDeclarator,
    ParamList,
    ParameterDeclaration,
    CompoundStmt,
    DeclStmt,
    InitDeclarator,
    PointerDeclarator,
    ArrayDeclarator,
    StructSpecifier,
    UnionSpecifier,
    EnumSpecifier,
    IfStmt,
    ForStmt,
    WhileStmt,
    DoStmt,
    ReturnStmt,
    BreakStmt,
    ContinueStmt,
    SwitchStmt,
    CaseStmt,
    GotoStmt,
    LabelStmt,
    ExprStmt,
    ParenthesizedExpr,
    BinaryExpr,
    UnaryExpr,
    UpdateExpr,
    AssignExpr,
    CondExpr,
    CastExpr,
    SizeofExpr,
    CallExpr,
    ArgList,
    SubscriptExpr,
    FieldExpr,
    InitList,
    CommaExpr,
};

const char* node_kind_label(NodeKind k);

// A lexical token annotated with its own node type and its parent's type.
struct Token {
    std::string text;
    Span span;
    TerminalType term = TerminalType::Identifier;
    NodeKind parent = NodeKind::TranslationUnit;

    const char* tt() const { return terminal_type_label(term); }
    const char* pt() const { return node_kind_label(parent); }

    // The combined annotation label, e.g. "identifier#binary_expr".
    std::string type_label() const { return std::string(tt()) + "#" + pt(); }
};

}  // namespace cct
