#!/usr/bin/env python3
"""Rebuild the shipped access-control catalog data file.

The tables are transcribed here as Python literals; the script instantiates
templates, validates the assembled catalog, and writes the canonical JSON to
src/secassess/data/soa-ac-catalog.json.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from secassess import catalog as cat
from secassess.core import ControlKind, MaturityLevel, SecurityDomain, instantiate_template

OUT_PATH = Path(__file__).resolve().parents[1] / "src" / "secassess" / "data" / "soa-ac-catalog.json"

VERSION = "soa-ac-1.0.0"

LEVELS = [
    (1, "Trial SOA",
     "First services interact point to point; network and transport safeguards and device access control are put in place."),
    (2, "Integrative SOA",
     "Services are integrated through a service bus; access control policy starts to be formalized."),
    (3, "Administered SOA",
     "Services are orchestrated and security properties are decoupled from individual applications."),
    (4, "Cooperative SOA",
     "Business processes span front-end applications and partners, with SLAs guaranteeing service quality."),
    (5, "On Demand SOA",
     "Collaboration becomes dynamic, with security properties discovered and SLAs negotiated automatically."),
]

DOMAINS = [
    {"id": "message-protection", "name": "Message protection",
     "related": ["Transport", "Service communication protocol", "SOA external", "Applications front end"],
     "requirements": ["Confidentiality", "Integrity", "Authentication"]},
    {"id": "resource-protection", "name": "Resource protection",
     "related": ["Service description", "Service registry", "Devices", "Applications front end"],
     "requirements": ["Authorization", "Privacy", "Audit"]},
    {"id": "security-properties-specification", "name": "Security properties Specification",
     "related": ["Service registry", "Service description", "Policy", "Business process"],
     "requirements": ["SOA Security Policy", "Business Security Policy",
                      "Business process security specification"]},
    {"id": "security-negotiation", "name": "Security Negotiation",
     "related": ["Service description", "Service registry", "Business process"],
     "requirements": ["Negotiation Policy (Business contract, SLA)",
                      "Security Properties dynamic discovery and binding"]},
    {"id": "security-management", "name": "Security Management",
     "related": ["Management"],
     "requirements": ["Security Monitoring", "Security Governance",
                      "Generating security implementations from abstracted security requirements"]},
]

POLICY = ControlKind.POLICY_OR_PROCEDURE.value
PROCESS = ControlKind.PROCESS.value
RESOURCE = ControlKind.ORGANIZATIONAL_OR_TECHNICAL_RESOURCE.value

# Shorthand for question entries: (suffix, prompt, answerKind, role, derived).
YN = "yes-no"
CN = "count"

# Each key indicator: id, name, level, domain, goals. detail-pending goals
# carry no "questions"/"metrics" keys.
KEY_INDICATORS = [
    # ----- Level 1 -------------------------------------------------------
    {
        "id": "ki-message-ac-transport",
        "name": "Message AC at Transport level",
        "level": 1, "domain": "message-protection",
        "goals": [
            {"id": "g-transport-node-authentication", "name": "Node authentication",
             "kind": RESOURCE,
             "objective": "Automatic equipment identification should authenticate connections from specific locations and equipment."},
            {"id": "g-transport-user-identification", "name": "User identification and authentication",
             "kind": RESOURCE,
             "objective": "All users should have a unique identifier, and a suitable authentication technique should substantiate the claimed identity."},
        ],
    },
    {
        "id": "ki-devices-access-control",
        "name": "Devices Access Control",
        "level": 1, "domain": "resource-protection",
        "goals": [
            {"id": "g-devices-network-segregation", "name": "Segregation in networks and use of system utilities",
             "kind": RESOURCE,
             "objective": "Groups of information services, users and systems should be segregated on networks, and utility programs able to override controls should be restricted."},
            {"id": "g-devices-remote-diagnostic-ports", "name": "Remote diagnostic port protection",
             "kind": RESOURCE,
             "objective": "Physical and logical access to diagnostic and configuration ports should be controlled."},
        ],
    },
    {
        "id": "ki-human-resource-security",
        "name": "Human Resource Security",
        "level": 1, "domain": "security-management",
        "goals": [
            {"id": "g-hr-awareness-training", "name": "Information security awareness and training",
             "kind": PROCESS,
             "objective": "All employees and relevant contractors should receive appropriate security awareness training and regular updates."},
        ],
    },
    # ----- Level 2 -------------------------------------------------------
    {
        "id": "ki-access-control-policy-definition",
        "name": "Access Control Policy Definition",
        "level": 2, "domain": "security-properties-specification",
        "goals": [
            {
                "id": "g-acpd-classification-guidelines", "name": "Classification guidelines",
                "kind": PROCESS, "secondaryIntent": "control",
                "objective": "Information should be classified in terms of its value, legal requirements, sensitivity and criticality to the organization.",
                "questions": [
                    ("1", "Is the information classified in terms of its value, sensitivity, legal requirements and criticality to the organization?", YN, "evidence", False),
                    ("2", "Are there resources allocated to classify the Information?", YN, "checklist-item", False),
                    ("3", "Are responsibilities assigned to classify the Information?", YN, "checklist-item", False),
                    ("4", "Is the process of classifying information documented?", YN, "checklist-item", False),
                    ("5", "Are tools provided for classifying the Information?", YN, "checklist-item", False),
                    ("apps-total", "How many applications are in the application inventory?", CN, "denominator-source", True),
                    ("apps-classified", "How many applications have their information classified?", CN, "numerator-source", True),
                    ("apps-critical", "How many applications are classified as critical?", CN, "numerator-source", True),
                ],
                "metrics": [
                    {"id": "m-acpd-applications-classified", "name": "% applications classified",
                     "formula": {"kind": "ratio-percent", "num": "apps-classified", "den": "apps-total"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"}},
                    {"id": "m-acpd-classification-process-quality", "name": "application classification process quality",
                     "formula": {"kind": "yes-fraction", "questions": ["2", "3", "4", "5"]},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"}},
                    {"id": "m-acpd-critical-applications", "name": "% critical applications",
                     "formula": {"kind": "ratio-percent", "num": "apps-critical", "den": "apps-total"},
                     "target": {"mode": "lower-better", "threshold": 10, "unit": "percent"}},
                ],
            },
            {
                "id": "g-acpd-information-labeling", "name": "Information labeling and handling",
                "kind": PROCESS, "secondaryIntent": "alignment",
                "objective": "Procedures for information labeling and handling should be developed and implemented in accordance with the classification scheme.",
                "questions": [
                    ("1", "Is a set of Procedures for information labeling and handling developed?", YN, "evidence", False),
                    ("2", "Are there resources allocated to develop procedures for information labeling and handling?", YN, "checklist-item", False),
                    ("3", "Are responsibilities assigned to develop procedures for information labeling and handling?", YN, "checklist-item", False),
                    ("4", "Is the process of developing procedures for information labeling and handling documented?", YN, "checklist-item", False),
                    ("5", "Are tools provided for developing procedures for information labeling and handling?", YN, "checklist-item", False),
                    ("6", "Are procedures for information labeling and handling implemented in accordance with the classification scheme?", YN, "checklist-item", False),
                    ("apps-total", "How many applications are in the application inventory?", CN, "denominator-source", True),
                    ("apps-protected", "How many applications have protection plan procedures?", CN, "numerator-source", True),
                ],
                "metrics": [
                    {"id": "m-acpd-applications-protection-plan", "name": "% applications with protection plan procedures",
                     "formula": {"kind": "ratio-percent", "num": "apps-protected", "den": "apps-total"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"}},
                    {"id": "m-acpd-protection-plan-process-quality", "name": "application protection plan process quality",
                     "formula": {"kind": "yes-fraction", "questions": ["2", "3", "4", "5", "6"]},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"}},
                ],
            },
            {
                "id": "g-acpd-information-exchange", "name": "Information exchange policies and procedures",
                "kind": POLICY,
                "objective": "Formal policies, procedures and controls should protect the exchange of information.",
                "questions": [
                    ("1", "Does security policy stipulate procedures to protect exchanged information from unauthorized access?", YN, "evidence", False),
                    ("2", "Does the security policy stipulate to use cryptographic techniques to protect information?", YN, "evidence", False),
                    ("3", "Is security policy aligned with any relevant legal requirement?", YN, "evidence", False),
                ],
                "metrics": [
                    {"id": "m-acpd-exchange-procedure", "name": "Access control procedure for exchanged information in security policies and procedures",
                     "formula": {"kind": "boolean-of", "question": "1"},
                     "target": {"mode": "boolean-true"}, "tags": ["consistency"]},
                    {"id": "m-acpd-cryptographic-techniques", "name": "use of cryptographic techniques stipulated in security policy",
                     "formula": {"kind": "boolean-of", "question": "2"},
                     "target": {"mode": "boolean-true"}, "tags": ["consistency"]},
                    {"id": "m-acpd-legal-alignment", "name": "security policy alignment with legal requirement",
                     "formula": {"kind": "boolean-of", "question": "3"},
                     "target": {"mode": "boolean-true"}, "tags": ["alignment"]},
                ],
            },
            {
                "id": "g-acpd-network-services-policy", "name": "Policy on use of network services",
                "kind": POLICY,
                "objective": "Users should only be provided with access to the network services they have been specifically authorized to use.",
                "questions": [
                    ("1", "Does the security policy cover the networks and network services which are allowed to be accessed?", YN, "evidence", False),
                    ("2", "Does the security policy cover authorization procedures for determining who is allowed to access which networked services?", YN, "evidence", False),
                    ("3", "Does the security policy cover management controls and procedures to protect access to network connections and network services?", YN, "evidence", False),
                    ("4", "Is this security policy aligned with business policy?", YN, "evidence", False),
                    ("services-total", "How many services are allowed to be accessed?", CN, "denominator-source", True),
                    ("services-covered", "How many of the services allowed to be accessed are covered by the security policy?", CN, "numerator-source", True),
                ],
                "metrics": [
                    {"id": "m-acpd-services-covered", "name": "% services allowed to be accessed covered by security policy",
                     "formula": {"kind": "ratio-percent", "num": "services-covered", "den": "services-total"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"},
                     "tags": ["consistency"]},
                    {"id": "m-acpd-authorization-procedures", "name": "Service authorization procedures in security policy",
                     "formula": {"kind": "boolean-of", "question": "2"},
                     "target": {"mode": "boolean-true"}, "tags": ["alignment"]},
                ],
            },
        ],
    },
    {
        "id": "ki-message-ac-service-protocol",
        "name": "Message AC at Service Communication protocol Level",
        "level": 2, "domain": "message-protection",
        "goals": [
            {
                "id": "g-msg-secure-electronic-messaging", "name": "Secure electronic messaging",
                "kind": RESOURCE,
                "objective": "Information involved in electronic messaging should be appropriately protected",
                "questions": [
                    ("1", "Are messages protected from unauthorized access with appropriate access control mechanisms?", YN, "evidence", False),
                    ("2", "Does the organization collect and review audit logs associated with unauthorized access to messages?", YN, "evidence", False),
                    ("3", "How many incidents related to unauthorized access to messages were logged within the reporting period?", CN, "numerator-source", False),
                    ("4", "Are strong levels of authentication controlling access of messages from publicly accessible networks?", YN, "evidence", False),
                    ("5", "How many services are in the inventory?", CN, "denominator-source", False),
                    ("6", "How many services use weak authentication techniques?", CN, "numerator-source", False),
                ],
                "metrics": [
                    {"id": "m-msg-ac-incidents", "name": "nb of message AC incidents",
                     "formula": {"kind": "count-of", "question": "3"},
                     "target": {"mode": "lower-better", "threshold": 0, "unit": "count"}},
                    {"id": "m-msg-weak-authentication", "name": "% of services with weak authentication techniques",
                     "formula": {"kind": "ratio-percent", "num": "6", "den": "5"},
                     "target": {"mode": "lower-better", "threshold": 10, "unit": "percent"}},
                ],
            },
            {
                "id": "g-msg-network-connection-control", "name": "Network connection control",
                "kind": RESOURCE, "secondaryIntent": "alignment",
                "objective": "To restrict the capability of services to connect to the network in line with the access control policy and requirements of the business applications.",
                "questions": [
                    ("1", "Are network access rights of services maintained and updated according to the access control policy?", YN, "evidence", False),
                    ("2", "How many services are in the inventory?", CN, "denominator-source", False),
                    ("3", "How many services have their access rights aligned with access control policy?", CN, "numerator-source", False),
                    ("4", "Is there a network gateway that can restrict the connection capability of service?", YN, "evidence", False),
                    ("5", "How many messages are restricted by network gateway during a specified period?", CN, "denominator-source", False),
                    ("6", "How many messages are restricted according to access control policy?", CN, "numerator-source", False),
                ],
                "metrics": [
                    {"id": "m-msg-access-rights-aligned", "name": "% service whose access rights are aligned with security policy",
                     "formula": {"kind": "ratio-percent", "num": "3", "den": "2"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"},
                     "tags": ["alignment"]},
                    {"id": "m-msg-network-gateway", "name": "use of network gateway to restrict service connection",
                     "formula": {"kind": "boolean-of", "question": "4"},
                     "target": {"mode": "boolean-true"}},
                    {"id": "m-msg-messages-restricted", "name": "% of message restricted by network gateway according to access control policy",
                     "formula": {"kind": "ratio-percent", "num": "6", "den": "5"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"},
                     "tags": ["alignment"]},
                ],
            },
            {
                "id": "g-msg-network-routing-control", "name": "Network routing control",
                "kind": RESOURCE, "secondaryIntent": "alignment",
                "objective": "Routing controls should be implemented for networks to ensure that service connections and message flows do not breach the access control policy of the business application",
                "questions": [
                    ("1", "Do you implement routing controls for networks?", YN, "evidence", False),
                    ("2", "Are these routing controls aligned with security policy?", YN, "evidence", False),
                    ("3", "How many routing controls for networks are implemented?", CN, "denominator-source", False),
                    ("4", "How many routing controls are aligned with access control policy?", CN, "numerator-source", False),
                ],
                "metrics": [
                    {"id": "m-msg-routing-controls", "name": "use of routing controls for network",
                     "formula": {"kind": "boolean-of", "question": "1"},
                     "target": {"mode": "boolean-true"}},
                    {"id": "m-msg-routing-aligned", "name": "% routing control aligned with security policy",
                     "formula": {"kind": "ratio-percent", "num": "4", "den": "3"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"},
                     "tags": ["alignment"]},
                ],
            },
        ],
    },
    {
        "id": "ki-service-description-ac",
        "name": "Service description AC",
        "level": 2, "domain": "resource-protection",
        "goals": [
            {
                "id": "g-sd-information-access-restriction", "name": "Information access restriction",
                "kind": RESOURCE,
                "objective": "Access to information and application system functions should be restricted in accordance with the access control policy.",
                "questions": [
                    ("1", "Do you provide menus to control access to service functions and interfaces?", YN, "evidence", False),
                    ("2", "Do you control access rights of users and other services to service functions and interfaces?", YN, "evidence", False),
                    ("functions-modified", "How many service functions were modified during the reporting period?", CN, "denominator-source", True),
                    ("functions-uncontrolled", "How many service functions were modified without access control?", CN, "numerator-source", True),
                ],
                "metrics": [
                    {"id": "m-sd-menu-access-control", "name": "use of menu to control access to service functions",
                     "formula": {"kind": "boolean-of", "question": "1"},
                     "target": {"mode": "boolean-true"}},
                    {"id": "m-sd-uncontrolled-modifications", "name": "% of service functions modified without control access",
                     "formula": {"kind": "ratio-percent", "num": "functions-uncontrolled", "den": "functions-modified"},
                     "target": {"mode": "lower-better", "threshold": 10, "unit": "percent"}},
                ],
            },
            {
                "id": "g-sd-source-code-access", "name": "Access control to program source code",
                "kind": RESOURCE, "secondaryIntent": "alignment",
                "objective": "Access to program source code should be restricted and changes managed through a defined procedure.",
                "questions": [
                    ("1", "Do you have a procedure for managing program source codes and libraries?", YN, "evidence", False),
                    ("2", "Are the program source codes and libraries managed according to the procedure?", YN, "evidence", False),
                    ("3", "Do you maintain audit log of all accesses to program source libraries?", YN, "evidence", False),
                    ("services-total", "How many services are in the inventory?", CN, "denominator-source", True),
                    ("services-managed", "How many services are managed according to the change management procedure?", CN, "numerator-source", True),
                ],
                "metrics": [
                    {"id": "m-sd-change-management", "name": "change management procedures",
                     "formula": {"kind": "boolean-of", "question": "1"},
                     "target": {"mode": "boolean-true"}},
                    {"id": "m-sd-services-managed", "name": "% service managed according to the change management procedure",
                     "formula": {"kind": "ratio-percent", "num": "services-managed", "den": "services-total"},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"},
                     "tags": ["alignment"]},
                ],
            },
        ],
    },
    {
        "id": "ki-registry-ac",
        "name": "Registry AC",
        "level": 2, "domain": "resource-protection",
        "goals": [
            {"id": "g-registry-user-registration", "name": "User registration",
             "kind": POLICY,
             "objective": "A formal user registration and de-registration procedure should govern access to the registry."},
        ],
    },
    {
        "id": "ki-infrastructure-ac-monitoring",
        "name": "Infrastructure AC Monitoring",
        "level": 2, "domain": "security-management",
        "goals": [
            {
                "id": "g-mon-audit-logging", "name": "Audit Logging",
                "kind": RESOURCE,
                "objective": "Audit logs recording user activities, exceptions and security events should be produced and kept.",
                "questions": [
                    ("1", "Do you record audit logs?", YN, "evidence", False),
                    ("2", "Does your audit log contain user IDs?", YN, "checklist-item", False),
                    ("3", "Does your audit log contain dates, times, and details of key events?", YN, "checklist-item", False),
                    ("4", "Does your audit log contain records of successful and rejected system and data access attempts?", YN, "checklist-item", False),
                    ("5", "Does your audit log contain use of privileges?", YN, "checklist-item", False),
                ],
                "metrics": [
                    {"id": "m-mon-audit-logs", "name": "Use of Audit Logs",
                     "formula": {"kind": "boolean-of", "question": "1"},
                     "target": {"mode": "boolean-true"}},
                    {"id": "m-mon-audit-log-detail", "name": "Detail of audit log",
                     "formula": {"kind": "yes-fraction", "questions": ["2", "3", "4", "5"]},
                     "target": {"mode": "higher-better", "threshold": 90, "unit": "percent"}},
                ],
            },
            {
                "id": "g-mon-clock-synchronization", "name": "Clock synchronization",
                "kind": RESOURCE,
                "objective": "Clocks of all relevant information processing systems should be synchronized with an agreed accurate time source.",
                "questions": [
                    ("1", "Do you synchronize clocks of all relevant information processing systems within a security domain with an agreed accurate time source?", YN, "evidence", False),
                ],
                "metrics": [
                    {"id": "m-mon-clock-synchronization", "name": "synchronize clock",
                     "formula": {"kind": "boolean-of", "question": "1"},
                     "target": {"mode": "boolean-true"}},
                ],
            },
        ],
    },
    # ----- Level 3 -------------------------------------------------------
    {
        "id": "ki-ac-assertions-service-security-policy",
        "name": "AC assertions in Service security Policy",
        "level": 3, "domain": "security-properties-specification",
        "goals": [
            {"id": "g-acassert-third-party-agreements", "name": "Addressing security in third party agreements",
             "kind": POLICY,
             "objective": "Agreements with third parties involving access to information assets should cover all relevant security requirements."},
            {"id": "g-acassert-network-services-security", "name": "Security of network services",
             "kind": POLICY,
             "objective": "Security features, service levels and management requirements of network services should be identified and included in service agreements."},
        ],
    },
    {
        "id": "ki-ac-properties-description-registries",
        "name": "AC properties in Service description and in registries",
        "level": 3, "domain": "security-properties-specification",
        "goals": [
            {"id": "g-acprops-service-delivery", "name": "Service delivery",
             "kind": PROCESS,
             "objective": "Security controls, service definitions and delivery levels in third party service agreements should be implemented, operated and maintained."},
        ],
    },
    {
        # Named alongside "AC assertions in Service security Policy" without
        # its own goal row; kept with a cross-reference.
        "id": "ki-service-security-policy-ac",
        "name": "Service Security Policy AC",
        "level": 3, "domain": "resource-protection",
        "goals": [],
        "goalsPending": True,
        "relatedKiId": "ki-ac-assertions-service-security-policy",
    },
    {
        "id": "ki-service-ac-monitoring",
        "name": "Service AC Monitoring",
        "level": 3, "domain": "security-management",
        "goals": [
            {"id": "g-svcmon-third-party-review", "name": "Monitoring and review of third party services",
             "kind": PROCESS,
             "objective": "Services, reports and records provided by third parties should be regularly monitored, reviewed and audited."},
            {"id": "g-svcmon-system-use", "name": "Monitoring system use",
             "kind": PROCESS,
             "objective": "Procedures for monitoring use of information processing facilities should be established and results reviewed regularly."},
            {"id": "g-svcmon-key-management", "name": "Key Management",
             "kind": PROCESS,
             "objective": "Key management should support the organization's use of cryptographic techniques."},
            {"id": "g-svcmon-technical-vulnerabilities", "name": "Control of technical vulnerabilities",
             "kind": PROCESS,
             "objective": "Timely information about technical vulnerabilities should be obtained, exposure evaluated and appropriate measures taken."},
        ],
    },
    # ----- Level 4 -------------------------------------------------------
    {
        "id": "ki-applications-front-end-ac",
        "name": "Applications front end AC",
        "level": 4, "domain": "resource-protection",
        "goals": [
            {"id": "g-frontend-external-party-risks", "name": "Identification of risks to related external parties",
             "kind": PROCESS,
             "objective": "Risks to information and processing facilities from business processes involving external parties should be identified and mitigated before granting access."},
            {"id": "g-frontend-privilege-management", "name": "Privilege management",
             "kind": PROCESS,
             "objective": "The allocation and use of privileges should be restricted and controlled."},
            {"id": "g-frontend-external-authentication", "name": "User authentication for external connections",
             "kind": RESOURCE,
             "objective": "Appropriate authentication methods should control access by remote users."},
            {"id": "g-frontend-secure-logon", "name": "Secure Log-on Procedures",
             "kind": POLICY,
             "objective": "Access to operating systems and applications should be controlled by a secure log-on procedure."},
            {"id": "g-frontend-user-identification", "name": "User identification and authentication",
             "kind": RESOURCE,
             "objective": "All users should have a unique identifier, and a suitable authentication technique should substantiate the claimed identity."},
            {"id": "g-frontend-password-management", "name": "Password management system",
             "kind": RESOURCE,
             "objective": "Systems for managing passwords should be interactive and ensure quality passwords."},
        ],
    },
    {
        "id": "ki-security-properties-sla",
        "name": "Security properties defined in SLA",
        "level": 4, "domain": "security-properties-specification",
        "goals": [
            {"id": "g-sla-access-control-policy", "name": "Access Control Policy",
             "kind": POLICY,
             "objective": "An access control policy should be established, documented and reviewed based on business and security requirements."},
            {"id": "g-sla-cryptographic-policy", "name": "Policy on the use of cryptographic controls",
             "kind": POLICY,
             "objective": "A policy on the use of cryptographic controls for information protection should be developed and implemented."},
            {"id": "g-sla-network-services-security", "name": "Security of network services",
             "kind": POLICY,
             "objective": "Security features, service levels and management requirements of network services should be identified and included in service agreements."},
            {"id": "g-sla-business-information-systems", "name": "Secure Business Information systems",
             "kind": POLICY,
             "objective": "Policies and procedures should protect information associated with the interconnection of business information systems."},
            {"id": "g-sla-electronic-commerce", "name": "Secure Electronic commerce",
             "kind": RESOURCE,
             "objective": "Information involved in electronic commerce passing over public networks should be protected from fraudulent activity and unauthorized disclosure or modification."},
            {"id": "g-sla-online-transactions", "name": "Secure On-Line Transactions",
             "kind": RESOURCE,
             "objective": "Information involved in on-line transactions should be protected against incomplete transmission, mis-routing, unauthorized alteration, disclosure or replay."},
            {"id": "g-sla-customer-security", "name": "Addressing security when dealing with customers",
             "kind": PROCESS,
             "objective": "All identified security requirements should be addressed before giving customers access to the organization's information or assets."},
            {"id": "g-sla-runtime-selection-rules", "name": "Security rules definition for service selection at runtime",
             "kind": POLICY, "source": "literature",
             "objective": "Security rules governing which services may be selected and bound at runtime should be defined in service level agreements."},
        ],
    },
    {
        "id": "ki-business-process-security-specification",
        "name": "Business process security specification language",
        "level": 4, "domain": "security-properties-specification",
        "goals": [
            {"id": "g-bpss-requirements-analysis", "name": "Security requirements analysis and specification",
             "kind": PROCESS,
             "objective": "Statements of business requirements for new systems or enhancements should specify the requirements for security controls."},
            {"id": "g-bpss-specification-languages", "name": "Languages to specify business process and its security constraints",
             "kind": RESOURCE, "source": "literature",
             "objective": "Business processes and their security constraints should be expressed in a specification language that supports enforcement."},
        ],
    },
    {
        "id": "ki-generating-security-implementations",
        "name": "Generating security implementations from abstracted security requirements",
        "level": 4, "domain": "security-management",
        "goals": [
            {"id": "g-gensec-model-driven-security",
             "name": "Use of Model Driven Security to automate the generation and re-generation of technical security enforcement from generic models",
             "kind": RESOURCE, "source": "literature",
             "objective": "Technical security enforcement should be generated and re-generated automatically from generic security models."},
        ],
    },
    # ----- Level 5 -------------------------------------------------------
    {
        "id": "ki-security-properties-dynamic-discovery",
        "name": "Security Properties dynamic discovery and binding",
        "level": 5, "domain": "security-negotiation",
        "goals": [
            {"id": "g-dyndisc-semantic-annotation", "name": "Use of Security Semantic Annotation in Service description and registry",
             "kind": RESOURCE, "source": "literature",
             "objective": "Service descriptions and registry entries should carry semantic security annotations enabling dynamic discovery of access control properties."},
            {"id": "g-dyndisc-negotiation-architecture", "name": "Architectural requirements for AC Properties Negotiation",
             "kind": RESOURCE, "source": "literature",
             "objective": "The architecture should provide the negotiation protocol and the negotiation, mediation and auditing services required to negotiate access control properties."},
        ],
    },
    {
        "id": "ki-sla-compliance-monitoring",
        "name": "Monitoring of SLA Compliance to security rules",
        "level": 5, "domain": "security-management",
        "goals": [
            {"id": "g-slamon-formal-sla-definition", "name": "Formal definition and expressiveness of SLA",
             "kind": POLICY,
             "objective": "Service level agreements should be formally defined and expressive enough to state security rules."},
            {"id": "g-slamon-measurement-infrastructure", "name": "Use of Measurement and management infrastructure",
             "kind": RESOURCE,
             "objective": "A measurement and management infrastructure should monitor SLA compliance with security rules."},
        ],
    },
]


def build_document() -> dict:
    levels = [{"ordinal": o, "name": n, "synopsis": s} for o, n, s in LEVELS]
    domains = [
        {"id": d["id"], "name": d["name"], "relatedSoaElements": d["related"],
         "requirements": d["requirements"]}
        for d in DOMAINS
    ]
    level_objs = {o: MaturityLevel(o, n, s) for o, n, s in LEVELS}
    domain_objs = {
        d["id"]: SecurityDomain(d["id"], d["name"], tuple(d["related"]), tuple(d["requirements"]))
        for d in DOMAINS
    }

    key_indicators, goals, questions, metrics = [], [], [], []
    for ki in KEY_INDICATORS:
        ki_goals = ki["goals"]
        key_indicators.append({
            "id": ki["id"],
            "name": ki["name"],
            "level": ki["level"],
            "domain": ki["domain"],
            "goalIds": [g["id"] for g in ki_goals],
            "goalsPending": ki.get("goalsPending", False),
            "relatedKiId": ki.get("relatedKiId"),
        })
        for g in ki_goals:
            prefix = g["id"][2:]  # strip the "g-" id prefix for child ids
            question_ids, metric_ids = [], []
            local_qid = {}
            for suffix, prompt, answer_kind, role, derived in g.get("questions", []):
                qid = f"q-{prefix}-{suffix}"
                local_qid[suffix] = qid
                question_ids.append(qid)
                questions.append({
                    "id": qid, "goalId": g["id"], "prompt": prompt,
                    "answerKind": answer_kind, "role": role, "derived": derived,
                })
            for m in g.get("metrics", []):
                metric_ids.append(m["id"])
                f = m["formula"]
                if f["kind"] in ("boolean-of", "count-of"):
                    formula = {"kind": f["kind"], "questionId": local_qid[f["question"]]}
                elif f["kind"] == "ratio-percent":
                    formula = {"kind": f["kind"],
                               "numeratorQuestionId": local_qid[f["num"]],
                               "denominatorQuestionId": local_qid[f["den"]]}
                else:
                    formula = {"kind": f["kind"],
                               "questionIds": [local_qid[s] for s in f["questions"]]}
                t = m["target"]
                metrics.append({
                    "id": m["id"], "goalId": g["id"], "name": m["name"],
                    "formula": formula,
                    "target": {
                        "mode": t["mode"],
                        "defaultThreshold": t.get("threshold"),
                        "thresholdRequired": t["mode"] != "boolean-true",
                        "unit": t.get("unit"),
                    },
                    "tags": m.get("tags", []),
                })
            template = instantiate_template(
                ControlKind(g["kind"]), g["name"],
                level_objs[ki["level"]], domain_objs[ki["domain"]],
            )
            goals.append({
                "id": g["id"], "name": g["name"],
                "source": g.get("source", "iso27002"),
                "objective": g["objective"],
                "controlKind": g["kind"],
                "template": {
                    "analyze": template.analyze,
                    "purpose": template.purpose.value,
                    "qualityFocus": template.quality_focus,
                    "viewpoint": template.viewpoint,
                    "context": template.context,
                },
                "questionIds": question_ids,
                "metricIds": metric_ids,
                "detailPending": not metric_ids,
                "secondaryIntent": g.get("secondaryIntent"),
            })

    return {
        "version": VERSION,
        "levels": levels,
        "domains": domains,
        "keyIndicators": key_indicators,
        "goals": goals,
        "questions": questions,
        "metrics": metrics,
    }


def main() -> int:
    doc = build_document()
    catalog = cat.parse_catalog_document(doc)
    violations = cat.validate_catalog(catalog)
    if violations:
        for v in violations:
            print(f"[{v.rule_id}] {v.entity_id}: {v.message}", file=sys.stderr)
        return 1
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_bytes(cat.save_catalog(catalog))
    print(f"wrote {OUT_PATH} "
          f"({len(catalog.goals)} goals, {len(catalog.questions)} questions, "
          f"{len(catalog.metrics)} metrics)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
